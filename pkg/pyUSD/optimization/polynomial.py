import itertools

import numpy as np

from typing import Sequence


class DeterminantPolynomial:
    """det(A_0) on a face of coefficient space, as a multilinear polynomial.

    With only the coefficients in `free` non-zero, Sylvester's identity gives
    det(A_0) = det(1 - K G) with G the Gram matrix of the free duals. Since K
    is diagonal the expansion is

        Σ_S (-1)^|S| det(G_S) Π_{j in S} k_j

    over all subsets S of the free indices. For three free indices this is
    1 - Σ|v_j|² k_j + T Σ k_i k_j - T² k_1 k_2 k_3.
    """

    def __init__(self, dual_gram: np.ndarray, free: Sequence[int]):
        self.free = list(free)
        self.m = len(self.free)
        self.gram = dual_gram[np.ix_(self.free, self.free)]

        self.masks = np.array(
            list(itertools.product([False, True], repeat=self.m)), dtype=bool
        ).reshape(2**self.m, self.m)
        self.coefficients = np.array(
            [self._signed_minor(mask) for mask in self.masks], dtype=float
        )

    def _signed_minor(self, mask: np.ndarray) -> float:
        size = int(mask.sum())
        if size == 0:
            return 1.0

        minor = np.linalg.det(self.gram[np.ix_(mask, mask)])
        return (-1.0) ** size * float(np.real(minor))

    def _monomials(self, k: np.ndarray, skip: Sequence[int] = ()) -> np.ndarray:
        factors = np.where(self.masks, k, 1.0)
        for index in skip:
            factors[:, index] = 1.0
        return np.prod(factors, axis=1)

    def value(self, k: np.ndarray) -> float:
        return float(self.coefficients @ self._monomials(k))

    def gradient(self, k: np.ndarray) -> np.ndarray:
        gradient = np.empty(self.m)
        for j in range(self.m):
            active = self.coefficients * self.masks[:, j]
            gradient[j] = active @ self._monomials(k, skip=(j,))
        return gradient

    def hessian(self, k: np.ndarray) -> np.ndarray:
        # Multilinear, the diagonal vanishes
        hessian = np.zeros((self.m, self.m))
        for i, j in itertools.combinations(range(self.m), 2):
            active = self.coefficients * self.masks[:, i] * self.masks[:, j]
            hessian[i, j] = hessian[j, i] = active @ self._monomials(k, skip=(i, j))
        return hessian

    @property
    def intercepts(self) -> np.ndarray:
        return 1.0 / np.real(np.diag(self.gram))

    def radial_boundary(self, direction: np.ndarray) -> np.ndarray:
        """Point where the ray t·direction (t > 0) leaves the positivity domain.

        Along the ray A_0 = 1 - t V D V†, so the exit is at t = 1/λ_max with
        λ_max the largest eigenvalue of D^1/2 G D^1/2.
        """

        root = np.sqrt(np.clip(direction, 0.0, None))
        scaled = root[:, None] * self.gram * root[None, :]
        largest = np.linalg.eigvalsh(scaled)[-1]

        return direction / largest
