"""Named four-qubit states and the coarse classification by tangle type."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

from .errors import BadIndex, BadParam
from .invariants import PAIRS, TRIPLES, four_invariants
from .qstate import PureState, bring_to_front, from_terms, partial_trace
from .spectral import poly_coeffs, two_tangle
from .tangles import (DEFAULT_ITERATIONS, DEFAULT_RESTARTS, four_tangles,
                      one_tangle, three_tangle_mixed)

ZERO_TOL = 1e-6


@dataclass(frozen=True)
class NamedState:
    name: str
    params: dict
    state: PureState


def _param(params: dict, key: str, default=None) -> complex:
    if key in params:
        return params[key]
    if default is None:
        raise BadParam(f"missing parameter {key!r}")
    return default


def _ghz4(p):
    return {"0000": 1, "1111": 1}


def _cluster(p):
    return {"0000": 1, "1100": 1, "0011": 1, "1111": -1}


def _bell_product(p):
    return {"0000": 1, "0011": 1, "1100": 1, "1111": 1}


def _l_aia(p):
    a = float(_param(p, "a"))
    if not a >= 0:
        raise BadParam(f"L_AIA needs a >= 0, got {a}")
    g, h = a * (1 + 1j) / 2, a * (1 - 1j) / 2
    return {"0000": g, "1111": g, "0011": h, "1100": h,
            "0101": 1j * a, "1010": 1j * a, "0110": 1}


def _chi(p):
    return {"0000": _param(p, "a0000", 1.0), "1101": _param(p, "a1101", 1.0),
            "1110": _param(p, "a1110", 1.0)}


def _psi_s(p):
    return {"0000": _param(p, "a0000", 1.0), "1110": _param(p, "a1110", 1.0)}


def _w_tilde(p):
    return {"0000": 1, "1100": 1, "1010": 1, "1001": 1}


def _w4(p):
    return {"0001": 1, "0010": 1, "0100": 1, "1000": 1}


BUILDERS = {
    "GHZ4": _ghz4, "CLUSTER": _cluster, "BELL_PRODUCT": _bell_product,
    "L_AIA": _l_aia, "CHI": _chi, "PSI_S": _psi_s, "W_TILDE": _w_tilde, "W4": _w4,
}


def make(name: str, params: dict | None = None) -> NamedState:
    """Build a named state from its displayed amplitudes and normalize it."""
    params = dict(params or {})
    key = name.upper()
    if key not in BUILDERS:
        raise BadParam(f"unknown state {name!r}; choose from {', '.join(BUILDERS)}")
    terms = BUILDERS[key](params)
    try:
        state = from_terms(terms)
    except ValueError as exc:
        raise BadParam(f"{name}: {exc}") from None
    return NamedState(key, params, state)


# ---------------------------------------------------------------------------
# classification

@dataclass(frozen=True)
class GroupLabel:
    """``group`` is one of I, II, III, IV, FOUR_TANGLES_ONLY, NOT_4WAY_ENTANGLED."""
    group: str
    evidence: dict = field(repr=False)  # name -> value
    predicates: dict = field(default_factory=dict)
    zero_tol: float = ZERO_TOL

    def verdicts(self) -> dict:
        return {k: v > self.zero_tol for k, v in self.evidence.items()}


def _label(qs) -> str:
    return "".join(str(q) for q in qs)


def tangle_evidence(state: PureState, restarts: int = DEFAULT_RESTARTS,
                    iterations: int = DEFAULT_ITERATIONS, seed: int = 0,
                    threads: int = 1) -> dict:
    """All one-tangles, two-tangles (six pairs), three-tangles (four
    triples) and four-tangles (every focus qubit) of a four-qubit state."""
    if state.n_qubits != 4:
        raise BadIndex(f"classification needs four qubits, got {state.n_qubits}")
    ev = {}
    for q in range(1, 5):
        ev[f"one|{q}"] = one_tangle(state, q)
    for pair in combinations(range(1, 5), 2):
        ev[f"two|{_label(pair)}"] = two_tangle(partial_trace(state, pair))
    for triple in combinations(range(1, 5), 3):
        ev[f"three|{_label(triple)}"] = three_tangle_mixed(
            partial_trace(state, triple), restarts=restarts, iterations=iterations,
            seed=seed, threads=threads).estimate
    for q in range(1, 5):
        ft = four_tangles(bring_to_front(state, [q]))
        ev[f"four0|{q}"] = ft.tau0
        ev[f"four1|{q}"] = ft.tau1
        for j in PAIRS:
            ev[f"four2|{q}|{j}"] = ft.tau2[j]
            ev[f"four3|{q}|{j}"] = ft.tau3[j]
    return ev


def classify(state: PureState, zero_tol: float = ZERO_TOL, **roof_kw) -> GroupLabel:
    ev = tangle_evidence(state, **roof_kw)

    def any_of(prefix):
        return any(v > zero_tol for k, v in ev.items() if k.startswith(prefix))

    pred = {
        "pairs_entangled": any_of("two|"),
        "triples_entangled": any_of("three|"),
        "four_tangle_nonzero": any_of("four"),
        "all_one_tangles_nonzero": all(ev[f"one|{q}"] > zero_tol for q in range(1, 5)),
    }
    pair, triple, four = (pred["pairs_entangled"], pred["triples_entangled"],
                          pred["four_tangle_nonzero"])
    if four and pair and triple:
        group = "I"
    elif four and triple:
        group = "II"
    elif four and pair:
        group = "III"
    elif four:
        # no pair or triple entanglement; none of the listed groups names this case
        group = "FOUR_TANGLES_ONLY"
    elif pred["all_one_tangles_nonzero"]:
        group = "IV"
    else:
        group = "NOT_4WAY_ENTANGLED"
    return GroupLabel(group, ev, pred, zero_tol)


# ---------------------------------------------------------------------------
# zero / nonzero patterns of the family table (focus qubit 1)

TABLE2_CLASSES = ("L_abc2", "L_ab3", "L_a4", "L_0_7+1", "L_0_5+3", "L_a2b2", "G_abcd",
                  "L_a2_0_3+1")

# 1 means "nonzero"; the printed table repeats tau_{1|2}**2 where tau_{1|4}**2 belongs
TABLE2 = {
    "tau2(rho12)": (1, 1, 1, 1, 1, 1, 1, 1),
    "tau2(rho13)": (1, 1, 1, 1, 1, 1, 1, 1),
    "tau2(rho14)": (1, 1, 1, 1, 1, 1, 1, 1),
    "tau1": (1, 0, 0, 0, 0, 1, 1, 1),
    "tau3(rho13)": (1, 1, 0, 0, 0, 1, 1, 1),
    "tau3(rho12)": (1, 1, 1, 0, 0, 1, 1, 1),
    "tau3(rho14)": (1, 1, 1, 0, 0, 1, 1, 1),
    "tau_1|3|4": (1, 1, 1, 1, 0, 0, 0, 0),
    "tau_1|2|3": (1, 1, 1, 1, 1, 0, 0, 0),
    "tau_1|2|4": (1, 1, 1, 1, 1, 1, 0, 0),
    "tau_1|2^2": (1, 1, 1, 0, 0, 1, 1, 1),
    "tau_1|3^2": (1, 1, 1, 0, 1, 1, 1, 1),
    "tau_1|4^2": (1, 1, 1, 0, 1, 1, 1, 1),
    "n16(rho12)": (1, 1, 1, 0, 0, 1, 1, 0),
    "n16(rho13)": (1, 1, 0, 0, 0, 1, 1, 0),
    "n16(rho14)": (1, 1, 1, 0, 0, 1, 1, 0),
}


@dataclass(frozen=True)
class Table2Row:
    quantity: str
    value: float
    nonzero: bool
    expected_nonzero: bool | None

    @property
    def matches(self) -> bool | None:
        return None if self.expected_nonzero is None else self.nonzero == self.expected_nonzero


def table2_check(state: PureState, class_name: str | None = None,
                 zero_tol: float = ZERO_TOL, **roof_kw) -> list[Table2Row]:
    """Zero/nonzero pattern of the family table quantities for ``state``,
    compared with the column of ``class_name`` when one is given."""
    if state.n_qubits != 4:
        raise BadIndex(f"the family table covers four-qubit states, got {state.n_qubits}")
    col = None
    if class_name is not None:
        if class_name not in TABLE2_CLASSES:
            raise BadParam(f"unknown class {class_name!r}; choose from {TABLE2_CLASSES}")
        col = TABLE2_CLASSES.index(class_name)
    inv = four_invariants(state)
    ft = four_tangles(state, inv)
    coeffs = {j: poly_coeffs(partial_trace(state, [1, j])) for j in PAIRS}
    three = {jk: three_tangle_mixed(partial_trace(state, [1, *jk]), **roof_kw).estimate
             for jk in TRIPLES}
    values = {f"tau2(rho1{j})": ft.tau2[j] for j in PAIRS}
    values["tau1"] = ft.tau1
    values.update({f"tau3(rho1{j})": ft.tau3[j] for j in PAIRS})
    values.update({f"tau_1|{j}|{k}": three[(j, k)] for j, k in TRIPLES})
    values.update({f"tau_1|{j}^2": max(0.0, coeffs[j].c_value) ** 2 for j in PAIRS})
    values.update({f"n16(rho1{j})": coeffs[j].n16 for j in PAIRS})
    rows = []
    for name, pattern in TABLE2.items():
        v = values[name]
        rows.append(Table2Row(name, v, v > zero_tol,
                              None if col is None else bool(pattern[col])))
    return rows


def closed_forms_L(a: float) -> dict:
    """Displayed closed forms for the L family at parameter ``a``."""
    d = (4 * a * a + 1) ** 2
    return {
        "one_tangle": (8 * a**2 + 16 * a**4) / d,
        "three_tangle": 8 * a**3 / d,
        "tau0_sq": 4 * a**4 / d,
        "tau1": 0.0,
        "n4_12": 4 * (a**4 + a**2) / d,
        "n4_13": (2 * a**2 + 7 * a**4) / d,
        "tau2_12": 8 * math.sqrt(3) * a**4 / d,
        "tau3_12": 0.0,
        "tau3_13": 4 * math.sqrt(5) * a**4 / d,
        "tau2_13": 4 * a**3 * math.sqrt(6 * a * a + 10) / d,
    }
