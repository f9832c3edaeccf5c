"""Bases induced by a d1u function and their weighted 2-design certificate.

For f: Z/dZ -> B the candidate bases are the standard basis and, for every
character psi_s of B, the vectors

    u_{t,s}(x) = exp(2 pi i t x / d) psi_s(f(x)) / sqrt(d),   t in Z/dZ.

Weights are one nonnegative number per basis, chosen to minimise the
weighted frame potential sum_{x,y} w_x w_y |<x, y>|^4 under sum_x w_x = 1.
A weighted set is a 2-design exactly when its twofold tensor mixture equals
Pi_sym / (d (d + 1) / 2); the Frobenius distance to that operator is the
reported residual.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .diffcalc import GroupFunction, is_d1u
from .errors import DomainError, InvalidInputError

RESIDUAL_TOL = 1e-9
GRAM_TOL = 1e-10
NORM_TOL = 1e-12


@dataclass(frozen=True)
class BasisSet:
    """Orthonormal bases; ``bases[j, t]`` is vector t of basis j."""

    d: int
    bases: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.bases, dtype=complex)
        if b.ndim != 3 or b.shape[1:] != (self.d, self.d):
            raise InvalidInputError(f"bases must have shape (m, {self.d}, {self.d}), got {b.shape}")
        norms = np.linalg.norm(b, axis=2)
        if np.max(np.abs(norms - 1), initial=0.0) > NORM_TOL:
            raise InvalidInputError("basis vectors are not unit vectors")
        gram = b.conj() @ b.transpose(0, 2, 1)
        if np.max(np.abs(gram - np.eye(self.d)), initial=0.0) > GRAM_TOL:
            raise InvalidInputError("a basis is not orthonormal")
        object.__setattr__(self, "bases", b)

    @property
    def count(self) -> int:
        return self.bases.shape[0]

    def vectors(self) -> np.ndarray:
        return self.bases.reshape(-1, self.d)


@dataclass(frozen=True)
class WeightedDesign:
    basis_set: BasisSet
    basis_weights: np.ndarray
    residual: float
    potential_gap: float
    certified: bool

    @property
    def d(self) -> int:
        return self.basis_set.d

    def vector_weights(self) -> np.ndarray:
        return np.repeat(self.basis_weights, self.d)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "bases": [[[[float(z.real), float(z.imag)] for z in v] for v in basis] for basis in self.basis_set.bases],
            "weights": [float(w) for w in self.basis_weights],
            "residual": self.residual,
            "potential_gap": self.potential_gap,
            "certified": self.certified,
        }


def _phase(num: np.ndarray, den: int | np.ndarray) -> np.ndarray:
    return np.exp(2j * np.pi * (np.mod(num, den) / den))


def character_bases(f: GroupFunction) -> BasisSet:
    """Standard basis plus one Fourier-type basis per character of the codomain."""
    if f.d < 2 or not is_d1u(f):
        raise InvalidInputError("character bases need a d1u function")
    d, g = f.d, f.codomain
    x = np.arange(d)
    fourier = _phase(np.outer(x, x), d) / np.sqrt(d)
    vals = f.as_array()  # (d, r)
    mods = np.array(g.factors, dtype=np.int64)
    bases = [np.eye(d, dtype=complex)]
    for s in g.elements():
        # sum_j s_j f_j(x) / n_j, each term reduced before mixing denominators
        frac = (np.mod(vals * np.array(s, dtype=np.int64), mods) / mods).sum(axis=1) if g.rank else np.zeros(d)
        psi = np.exp(2j * np.pi * np.mod(frac, 1.0))
        bases.append(fourier * psi[None, :])
    return BasisSet(d, np.array(bases))


def _overlap4(bs: BasisSet) -> np.ndarray:
    v = bs.vectors()
    return np.abs(v.conj() @ v.T) ** 4


def potential_matrix(bs: BasisSet) -> np.ndarray:
    """G[j, k] = sum over u in basis j, v in basis k of |<u, v>|^4."""
    m, d = bs.count, bs.d
    return _overlap4(bs).reshape(m, d, m, d).sum(axis=(1, 3))


def symmetric_projector(d: int) -> np.ndarray:
    """Projector onto the symmetric subspace of C^d (x) C^d."""
    swap = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            swap[i * d + j, j * d + i] = 1.0
    return (np.eye(d * d) + swap) / 2


def design_residual(bs: BasisSet, basis_weights: np.ndarray) -> float:
    """Frobenius norm of sum_x w_x (x x^*)^{(x)2} - Pi_sym / (d(d+1)/2)."""
    d = bs.d
    v = bs.vectors()
    y = (v[:, :, None] * v[:, None, :]).reshape(-1, d * d)  # rows are x (x) x
    w = np.repeat(np.asarray(basis_weights, dtype=float), d)
    mix = (y.T * w) @ y.conj()
    target = symmetric_projector(d) / (d * (d + 1) / 2)
    return float(np.linalg.norm(mix - target))


def _simplex_qp(G: np.ndarray, total: float, max_iter: int | None = None) -> np.ndarray:
    """Minimise w^T G w over w >= 0, sum(w) = total, by a primal active-set method."""
    m = G.shape[0]
    w = np.full(m, total / m)
    passive = np.ones(m, dtype=bool)
    tol = 1e-14 * max(1.0, float(np.abs(G).max()))
    for _ in range(max_iter or 20 * m + 20):
        idx = np.flatnonzero(passive)
        k = len(idx)
        kkt = np.zeros((k + 1, k + 1))
        kkt[:k, :k] = G[np.ix_(idx, idx)]
        kkt[:k, k] = 1.0
        kkt[k, :k] = 1.0
        rhs = np.zeros(k + 1)
        rhs[k] = total
        sol = np.linalg.lstsq(kkt, rhs, rcond=None)[0]
        z, lam = sol[:k], sol[k]
        if np.all(z > 0):
            w = np.zeros(m)
            w[idx] = z
            nu = G @ w + lam
            nu[passive] = 0.0
            j = int(np.argmin(nu))
            if nu[j] >= -tol:
                return w
            passive[j] = True
            continue
        # move towards z until the first passive weight reaches zero
        cur = w[idx]
        blocking = z <= 0
        steps = cur[blocking] / (cur[blocking] - z[blocking])
        alpha = float(np.min(steps))
        cur = cur + alpha * (z - cur)
        w = np.zeros(m)
        w[idx] = cur
        drop = idx[(cur <= 1e-15) | (blocking & (steps <= alpha))]
        passive[drop] = False
        w[drop] = 0.0
        if not passive.any():
            j = int(np.argmin(np.diag(G)))
            passive[j] = True
            w[j] = total
    raise RuntimeError("active-set solver did not converge")


def solve_weights(bs: BasisSet, tol: float = RESIDUAL_TOL) -> WeightedDesign:
    """Fit per-basis weights and certify the weighted 2-design condition.

    The returned design has ``certified`` False when the best achievable
    residual exceeds ``tol``; the weights are still the optimal ones found.
    """
    d = bs.d
    G = potential_matrix(bs)
    w = _simplex_qp(G, 1.0 / d)
    w = np.clip(w, 0.0, None)
    w *= (1.0 / d) / w.sum()
    residual = design_residual(bs, w)
    gap = float(w @ G @ w - 2.0 / (d * (d + 1)))
    return WeightedDesign(bs, w, residual, gap, residual <= tol)


def frame_potential_gap(wd: WeightedDesign) -> float:
    """sum_{x,y} w_x w_y |<x,y>|^4 - 2/(d(d+1)), evaluated vector by vector."""
    d = wd.d
    w = wd.vector_weights()
    return float(w @ _overlap4(wd.basis_set) @ w - 2.0 / (d * (d + 1)))


def haar_random_state(d: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=d) + 1j * rng.normal(size=d)
    return z / np.linalg.norm(z)


def haar_point_check(wd: WeightedDesign, trials: int = 100, seed: int = 0) -> float:
    """Largest deviation of sum_x w_x |<a,x>|^2 |<b,x>|^2 from (1 + |<a,b>|^2)/(d(d+1)).

    ``a`` and ``b`` are drawn Haar-uniformly; the closed form is the sphere
    average of that degree-(2,2) polynomial.
    """
    if trials < 1:
        raise DomainError("need at least one trial")
    d = wd.d
    rng = np.random.default_rng(seed)
    v = wd.basis_set.vectors()
    w = wd.vector_weights()
    worst = 0.0
    for _ in range(trials):
        a, b = haar_random_state(d, rng), haar_random_state(d, rng)
        lhs = float(w @ (np.abs(v.conj() @ a) ** 2 * np.abs(v.conj() @ b) ** 2))
        rhs = (1 + abs(np.vdot(a, b)) ** 2) / (d * (d + 1))
        worst = max(worst, abs(lhs - rhs))
    return worst


def point_check(wd: WeightedDesign, a: np.ndarray, b: np.ndarray) -> float:
    """Signed deviation for one explicit pair of unit vectors."""
    d = wd.d
    v = wd.basis_set.vectors()
    lhs = float(wd.vector_weights() @ (np.abs(v.conj() @ a) ** 2 * np.abs(v.conj() @ b) ** 2))
    return lhs - (1 + abs(np.vdot(a, b)) ** 2) / (d * (d + 1))


def unbiasedness_report(bs: BasisSet) -> float:
    """max over cross-basis pairs of | |<u,v>|^2 - 1/d |."""
    if bs.count < 2:
        raise DomainError("unbiasedness needs at least two bases")
    d, m = bs.d, bs.count
    v = bs.vectors()
    ov = (np.abs(v.conj() @ v.T) ** 2).reshape(m, d, m, d)
    dev = np.abs(ov - 1.0 / d)
    same = np.eye(m, dtype=bool)[:, None, :, None]
    return float(np.max(np.where(same, 0.0, dev)))


def certify(f: GroupFunction, tol: float = RESIDUAL_TOL) -> WeightedDesign:
    """character_bases followed by solve_weights."""
    return solve_weights(character_bases(f), tol)
