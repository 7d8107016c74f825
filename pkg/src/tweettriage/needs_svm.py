"""TF-IDF features and an RBF-kernel SVM for classifying expressed needs.

Binary machines are trained by sequential minimal optimization and combined
one-vs-one over the six need classes.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .core import NEED_ORDER, NeedLabel, TrainingRecord
from .textprep import preprocess

log = logging.getLogger(__name__)

ALPHA_FLOOR = 1e-9


@dataclass(eq=False)
class SparseVector:
    """Sorted ``indices`` with their nonzero ``values``."""

    indices: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.indices = np.asarray(self.indices, dtype=np.int64)
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.indices.shape != self.values.shape or self.indices.ndim != 1:
            raise ValueError("indices and values must be 1-d and of equal length")
        if len(self.indices) > 1 and np.any(np.diff(self.indices) <= 0):
            raise ValueError("indices must be strictly increasing")
        if np.any(self.values == 0):
            raise ValueError("zero weights must not be stored")

    def __len__(self):
        return len(self.indices)

    def __eq__(self, other):
        return (
            isinstance(other, SparseVector)
            and np.array_equal(self.indices, other.indices)
            and np.array_equal(self.values, other.values)
        )

    @classmethod
    def from_dict(cls, weights: dict[int, float]) -> "SparseVector":
        items = sorted((i, w) for i, w in weights.items() if w != 0)
        return cls([i for i, _ in items], [w for _, w in items])

    def to_dense(self, dim: int) -> np.ndarray:
        out = np.zeros(dim)
        out[self.indices] = self.values
        return out

    def squared_norm(self) -> float:
        return float(np.dot(self.values, self.values))


@dataclass
class IdfTable:
    vocabulary: dict[str, int]
    idf: np.ndarray
    n_docs: int

    def __len__(self):
        return len(self.vocabulary)


def fit_idf(token_lists: Sequence[Sequence[str]]) -> IdfTable:
    """Inverse document frequency ln(N / D_t); columns in first-appearance order."""
    if len(token_lists) == 0:
        raise ValueError("fit_idf needs at least one document")
    vocab: dict[str, int] = {}
    doc_freq: list[int] = []
    for tokens in token_lists:
        for t in dict.fromkeys(tokens):
            col = vocab.setdefault(t, len(vocab))
            if col == len(doc_freq):
                doc_freq.append(0)
            doc_freq[col] += 1
    n = len(token_lists)
    idf = np.array([math.log(n / d) for d in doc_freq], dtype=np.float64)
    return IdfTable(vocab, idf, n)


def vectorize(tokens: Sequence[str], table: IdfTable, l2_normalize: bool = False) -> SparseVector:
    counts: dict[int, int] = {}
    for t in tokens:
        col = table.vocabulary.get(t)
        if col is not None:
            counts[col] = counts.get(col, 0) + 1
    weights = {col: n * table.idf[col] for col, n in counts.items()}
    vec = SparseVector.from_dict(weights)
    if l2_normalize and len(vec):
        vec = SparseVector(vec.indices, vec.values / math.sqrt(vec.squared_norm()))
    return vec


def squared_distance(x: SparseVector, y: SparseVector) -> float:
    _, ix, iy = np.intersect1d(x.indices, y.indices, assume_unique=True, return_indices=True)
    only_x = np.ones(len(x), dtype=bool)
    only_x[ix] = False
    only_y = np.ones(len(y), dtype=bool)
    only_y[iy] = False
    diff = x.values[ix] - y.values[iy]
    # grouped so that swapping x and y gives a bit-identical result
    return float(
        np.dot(diff, diff)
        + (np.dot(x.values[only_x], x.values[only_x]) + np.dot(y.values[only_y], y.values[only_y]))
    )


def rbf_kernel(x: SparseVector, y: SparseVector, gamma: float) -> float:
    return math.exp(-gamma * squared_distance(x, y))


def to_csr(xs: Sequence[SparseVector], dim: int | None = None) -> sp.csr_matrix:
    if dim is None:
        dim = 1 + max((int(v.indices[-1]) for v in xs if len(v)), default=-1)
    indptr = np.cumsum([0] + [len(v) for v in xs])
    indices = np.concatenate([v.indices for v in xs]) if xs else np.zeros(0, np.int64)
    data = np.concatenate([v.values for v in xs]) if xs else np.zeros(0)
    return sp.csr_matrix((data, indices, indptr), shape=(len(xs), max(dim, 0)))


def gram_matrix(xs: Sequence[SparseVector], gamma: float) -> np.ndarray:
    """RBF Gram matrix; symmetric with an exact unit diagonal."""
    X = to_csr(xs)
    sq = np.asarray(X.multiply(X).sum(axis=1)).ravel()
    dots = (X @ X.T).toarray()
    d2 = np.maximum(sq[:, None] + sq[None, :] - 2.0 * dots, 0.0)
    d2 = 0.5 * (d2 + d2.T)
    np.fill_diagonal(d2, 0.0)
    return np.exp(-gamma * d2)


@dataclass
class SmoResult:
    alpha: np.ndarray
    bias: float
    n_steps: int
    n_sweeps: int
    objective: list[float] = field(default_factory=list)
    gap: float = 0.0
    converged: bool = True


def dual_objective(alpha: np.ndarray, y: np.ndarray, K: np.ndarray) -> float:
    ay = alpha * y
    return float(alpha.sum() - 0.5 * ay @ K @ ay)


def _bias_bounds(alpha, y, F, c):
    """Largest lower bound and smallest upper bound on the bias implied by KKT."""
    neg_f = -F
    pos = y > 0
    below_c = alpha < c
    above_0 = alpha > 0
    lo_set = (pos & below_c) | (~pos & above_0)
    hi_set = (pos & above_0) | (~pos & below_c)
    lo = neg_f[lo_set].max() if lo_set.any() else -np.inf
    hi = neg_f[hi_set].min() if hi_set.any() else np.inf
    i = int(np.flatnonzero(lo_set)[np.argmax(neg_f[lo_set])]) if lo_set.any() else -1
    j = int(np.flatnonzero(hi_set)[np.argmin(neg_f[hi_set])]) if hi_set.any() else -1
    return lo, hi, i, j


def smo_solve(
    K: np.ndarray,
    y: np.ndarray,
    c: float = 1.0,
    tol: float = 1e-3,
    max_passes: int = 10,
    seed: int = 0,
    max_steps: int = 200_000,
) -> SmoResult:
    """Maximize the soft-margin SVM dual over a precomputed kernel matrix.

    Sweeps follow the simplified SMO scheme: each multiplier that violates
    the KKT conditions by more than `tol` is paired with a randomly drawn
    second index, and sweeping stops after `max_passes` consecutive sweeps
    without an update. Random pairing can stall before the conditions hold
    everywhere, so the solver then keeps updating the maximal violating pair
    until the bias-free optimality gap is at most `tol`. The final bias sits
    in the middle of the interval the KKT conditions allow.
    """
    y = np.asarray(y, dtype=np.float64)
    n = len(y)
    if n == 0:
        raise ValueError("empty training set")
    if not (np.any(y > 0) and np.any(y < 0)):
        raise ValueError("both classes must be present")
    rng = np.random.default_rng(seed)
    alpha = np.zeros(n)
    F = -y.copy()  # decision value without bias, minus label
    b = 0.0
    objective = [0.0]
    steps = 0

    eps = 1e-12 * c

    def snap(a: float) -> float:
        # rounding residue must not leave a multiplier just off its bound
        if a < eps:
            return 0.0
        if a > c - eps:
            return c
        return a

    def take_step(i: int, j: int) -> bool:
        nonlocal b, steps
        if i == j:
            return False
        ai, aj = alpha[i], alpha[j]
        yi, yj = y[i], y[j]
        if yi != yj:
            lo, hi = max(0.0, aj - ai), min(c, c + aj - ai)
        else:
            lo, hi = max(0.0, ai + aj - c), min(c, ai + aj)
        if hi - lo <= 0:
            return False
        eta = K[i, i] + K[j, j] - 2.0 * K[i, j]
        if eta <= 1e-12:
            eta = 1e-12
        ei, ej = F[i] + b, F[j] + b
        aj_new = min(hi, max(lo, aj + yj * (ei - ej) / eta))
        if abs(aj_new - aj) < 1e-12 * (1.0 + aj_new + aj):
            return False
        ai_new = ai + yi * yj * (aj - aj_new)
        ai_new, aj_new = snap(ai_new), snap(aj_new)
        di, dj = ai_new - ai, aj_new - aj
        b1 = b - ei - yi * di * K[i, i] - yj * dj * K[i, j]
        b2 = b - ej - yi * di * K[i, j] - yj * dj * K[j, j]
        if 0 < ai_new < c:
            b = b1
        elif 0 < aj_new < c:
            b = b2
        else:
            b = 0.5 * (b1 + b2)
        alpha[i], alpha[j] = ai_new, aj_new
        F[:] += yi * di * K[:, i] + yj * dj * K[:, j]
        steps += 1
        objective.append(float(alpha.sum() - 0.5 * np.dot(alpha * y, F + y)))
        return True

    passes = sweeps = 0
    while passes < max_passes and steps < max_steps:
        changed = 0
        for i in range(n):
            r = y[i] * (F[i] + b)
            if (r < -tol and alpha[i] < c) or (r > tol and alpha[i] > 0):
                j = int(rng.integers(n - 1))
                j += j >= i
                changed += take_step(i, j)
        sweeps += 1
        passes = passes + 1 if changed == 0 else 0

    converged = True
    while True:
        lo, hi, i, j = _bias_bounds(alpha, y, F, c)
        gap = lo - hi
        if gap <= tol:
            break
        if steps >= max_steps or not take_step(i, j):
            converged = False
            log.warning("SMO stopped with optimality gap %.3g > %.3g", gap, tol)
            break

    if np.isfinite(lo) and np.isfinite(hi):
        b = 0.5 * (lo + hi)
    elif np.isfinite(lo):
        b = lo
    elif np.isfinite(hi):
        b = hi
    return SmoResult(alpha, float(b), steps, sweeps, objective, float(max(gap, 0.0)), converged)


@dataclass
class SvmBinaryModel:
    support_vectors: list[SparseVector]
    coeffs: np.ndarray  # alpha_i * y_i
    bias: float
    gamma: float
    sv_indices: list[int] = field(default_factory=list)
    c: float = 1.0

    def to_dict(self) -> dict:
        return {
            "support_vectors": [[v.indices.tolist(), v.values.tolist()] for v in self.support_vectors],
            "coeffs": np.asarray(self.coeffs).tolist(),
            "bias": self.bias,
            "gamma": self.gamma,
            "sv_indices": list(self.sv_indices),
            "c": self.c,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SvmBinaryModel":
        return cls(
            support_vectors=[SparseVector(i, v) for i, v in d["support_vectors"]],
            coeffs=np.asarray(d["coeffs"], dtype=np.float64),
            bias=float(d["bias"]),
            gamma=float(d["gamma"]),
            sv_indices=[int(i) for i in d["sv_indices"]],
            c=float(d["c"]),
        )


def _binary_from_solution(xs, y, res: SmoResult, gamma: float, c: float) -> SvmBinaryModel:
    keep = np.flatnonzero(res.alpha > ALPHA_FLOOR)
    return SvmBinaryModel(
        support_vectors=[xs[k] for k in keep],
        coeffs=res.alpha[keep] * y[keep],
        bias=res.bias,
        gamma=gamma,
        sv_indices=keep.tolist(),
        c=c,
    )


def train_smo(
    xs: Sequence[SparseVector],
    ys: Sequence[int],
    c: float = 1.0,
    gamma: float = 0.01,
    tol: float = 1e-3,
    max_passes: int = 10,
    seed: int = 0,
    return_result: bool = False,
):
    """Train a binary RBF SVM on +1/-1 labels.

    With ``return_result=True`` the raw :class:`SmoResult` (all multipliers,
    objective trace) is returned alongside the model.
    """
    if len(xs) != len(ys):
        raise ValueError("xs and ys differ in length")
    y = np.asarray(ys, dtype=np.float64)
    if len(y) and not np.all(np.abs(y) == 1):
        raise ValueError("labels must be +1 or -1")
    res = smo_solve(gram_matrix(xs, gamma) if len(xs) else np.zeros((0, 0)), y, c, tol, max_passes, seed)
    model = _binary_from_solution(list(xs), y, res, gamma, c)
    return (model, res) if return_result else model


def decision_value(model: SvmBinaryModel, x: SparseVector) -> float:
    total = model.bias
    for coef, sv in zip(model.coeffs, model.support_vectors):
        total += coef * rbf_kernel(sv, x, model.gamma)
    return float(total)


def kkt_violations(
    model: SvmBinaryModel, xs: Sequence[SparseVector], ys: Sequence[int], tol: float = 1e-3
) -> list[tuple[int, float, float]]:
    """Training points breaking the KKT conditions as ``(index, alpha, margin)``.

    Multipliers are recovered from the support vectors; every other point has
    a zero multiplier.
    """
    alpha = np.zeros(len(xs))
    alpha[model.sv_indices] = np.abs(model.coeffs)
    bad = []
    for k, (x, yk) in enumerate(zip(xs, ys)):
        m = yk * decision_value(model, x)
        a = alpha[k]
        if a <= ALPHA_FLOOR:
            ok = m >= 1 - tol
        elif a >= model.c * (1 - 1e-12):
            ok = m <= 1 + tol
        else:
            ok = 1 - tol <= m <= 1 + tol
        if not ok:
            bad.append((k, float(a), float(m)))
    return bad


@dataclass
class SvmMulticlassModel:
    """One-vs-one RBF machines over the need classes seen in training."""

    classes: tuple[NeedLabel, ...]
    idf: IdfTable
    machines: dict[tuple[NeedLabel, NeedLabel], SvmBinaryModel]
    gamma: float
    l2_normalize: bool = False

    def vector(self, tokens: Sequence[str]) -> SparseVector:
        return vectorize(tokens, self.idf, self.l2_normalize)

    def to_dict(self) -> dict:
        return {
            "classes": [c.value for c in self.classes],
            "gamma": self.gamma,
            "l2_normalize": self.l2_normalize,
            "idf": {
                "terms": list(self.idf.vocabulary),
                "idf": self.idf.idf.tolist(),
                "n_docs": self.idf.n_docs,
            },
            "machines": [
                {"pair": [a.value, b.value], "model": m.to_dict()} for (a, b), m in self.machines.items()
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SvmMulticlassModel":
        terms = d["idf"]["terms"]
        idf = IdfTable({t: k for k, t in enumerate(terms)}, np.asarray(d["idf"]["idf"], dtype=np.float64),
                       int(d["idf"]["n_docs"]))
        machines = {
            (NeedLabel(e["pair"][0]), NeedLabel(e["pair"][1])): SvmBinaryModel.from_dict(e["model"])
            for e in d["machines"]
        }
        return cls(tuple(NeedLabel(c) for c in d["classes"]), idf, machines, float(d["gamma"]),
                   bool(d["l2_normalize"]))


def train_needs_vectors(
    xs: Sequence[SparseVector],
    labels: Sequence[NeedLabel],
    idf: IdfTable,
    gamma: float = 0.01,
    c: float = 1.0,
    tol: float = 1e-3,
    max_passes: int = 10,
    seed: int = 0,
    l2_normalize: bool = False,
) -> SvmMulticlassModel:
    present = [lab for lab in NEED_ORDER if lab in set(labels)]
    if len(present) < 2:
        raise ValueError("need training data for at least two need classes")
    labels = list(labels)
    K = gram_matrix(xs, gamma)
    machines = {}
    for a, b in itertools.combinations(present, 2):
        idx = np.array([k for k, lab in enumerate(labels) if lab in (a, b)])
        y = np.array([1.0 if labels[k] is a else -1.0 for k in idx])
        res = smo_solve(K[np.ix_(idx, idx)], y, c, tol, max_passes, seed)
        sub = [xs[k] for k in idx]
        machines[(a, b)] = _binary_from_solution(sub, y, res, gamma, c)
    return SvmMulticlassModel(tuple(present), idf, machines, gamma, l2_normalize)


def train_needs(
    records: Sequence[TrainingRecord],
    stoplist=frozenset(),
    gamma: float = 0.01,
    c: float = 1.0,
    tol: float = 1e-3,
    max_passes: int = 10,
    seed: int = 0,
    l2_normalize: bool = False,
) -> SvmMulticlassModel:
    token_lists = [preprocess(r.text, stoplist) for r in records]
    labels = [NeedLabel.parse(r.label) for r in records]
    idf = fit_idf(token_lists)
    xs = [vectorize(toks, idf, l2_normalize) for toks in token_lists]
    return train_needs_vectors(xs, labels, idf, gamma, c, tol, max_passes, seed, l2_normalize)


def vote(model: SvmMulticlassModel, x: SparseVector) -> tuple[dict[NeedLabel, int], dict[NeedLabel, float]]:
    votes = {lab: 0 for lab in model.classes}
    margins = {lab: 0.0 for lab in model.classes}
    for (a, b), machine in model.machines.items():
        dv = decision_value(machine, x)
        # a zero decision value goes to the earlier class
        winner = a if dv >= 0 else b
        votes[winner] += 1
        margins[winner] += abs(dv)
    return votes, margins


def predict_vector(model: SvmMulticlassModel, x: SparseVector) -> NeedLabel:
    votes, margins = vote(model, x)
    return min(model.classes, key=lambda lab: (-votes[lab], -margins[lab], lab.order))


def predict_need(model: SvmMulticlassModel, tokens: Sequence[str]) -> NeedLabel:
    """Majority vote; ties go to the larger summed margin, then to class order."""
    return predict_vector(model, model.vector(tokens))
