"""
Allowed paths, the non-regular boundary and the invariant spaces Omega_p.

Paths are stored as tuples of vertex storage indices; A_p is enumerated in
lexicographic order of those indices. A PathComplex caches A_p, Omega_p and
the restricted boundary matrices for one digraph, so betti and h1_generators
can share work.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from flowhom.constants import DEFAULT_PATH_LIMIT
from flowhom.digraph import Digraph
from flowhom.errors import DimensionMismatchError, PathLimitExceeded
from flowhom.linalg import RATIONALS, Field, Scalar, SparseMatrix, Vector, axpy, kernel

logger = logging.getLogger(__name__)

IndexPath = tuple[int, ...]
LabelPath = tuple[str, ...]


def boundary_terms(path: Sequence) -> dict[tuple, int]:
    """
    Alternating face sum of a path, like tuples combined.

    Works on any tuple type; the boundary of a 0-path is the augmentation
    generator ().
    """
    if len(path) == 1:
        return {(): 1}
    out: dict[tuple, int] = {}
    for j in range(len(path)):
        face = tuple(path[:j]) + tuple(path[j + 1:])
        coef = out.get(face, 0) + (-1 if j % 2 else 1)
        if coef:
            out[face] = coef
        else:
            del out[face]
    return out


def raw_boundary_column(path: Sequence[str]) -> dict[LabelPath, int]:
    """Non-regular boundary of a labelled path: sum_j (-1)^j e_{path minus v_j}."""
    if not path:
        raise ValueError("a path has at least one vertex")
    return boundary_terms(tuple(path))


@dataclass(frozen=True)
class OmegaBasis:
    """Basis of Omega_p in coordinates of the allowed p-paths (ambient)."""

    dimension: int
    ambient: tuple[LabelPath, ...]
    vectors: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def labelled(self) -> list[dict[LabelPath, Scalar]]:
        """Basis vectors keyed by path labels."""
        return [{self.ambient[i]: c for i, c in sorted(v.items())} for v in self.vectors]


class PathComplex:
    """
    Path complex of one digraph over a field.

    Raises PathLimitExceeded from any accessor that would enumerate more than
    path_limit allowed paths in one dimension.
    """

    def __init__(self, d: Digraph, field: Field = RATIONALS, path_limit: int = DEFAULT_PATH_LIMIT):
        self.digraph = d
        self.field = field
        self.path_limit = path_limit
        idx = d.index
        self._succ: list[tuple[int, ...]] = [
            tuple(idx[w] for w in d.successors[v]) for v in d.vertices
        ]
        self._paths: list[list[IndexPath]] = []
        self._path_index: dict[int, dict[IndexPath, int]] = {}
        self._omega: dict[int, OmegaBasis] = {}
        self._boundary: dict[int, SparseMatrix] = {}

    # --- Allowed paths ---

    def paths(self, p: int) -> list[IndexPath]:
        """A_p as index tuples, lexicographically ordered."""
        if p < 0:
            raise ValueError(f"path dimension must be >= 0, got {p}")
        if not self._paths:
            self._paths.append([(i,) for i in range(self.digraph.n_vertices)])
        while len(self._paths) <= p:
            q = len(self._paths)
            prev = self._paths[-1]
            nxt: list[IndexPath] = []
            for path in prev:
                for w in self._succ[path[-1]]:
                    nxt.append(path + (w,))
                if len(nxt) > self.path_limit:
                    raise PathLimitExceeded(q, len(nxt), self.path_limit)
            logger.debug("|A_%d| = %d", q, len(nxt))
            self._paths.append(nxt)
        return self._paths[p]

    def path_index(self, p: int) -> dict[IndexPath, int]:
        if p not in self._path_index:
            self._path_index[p] = {path: i for i, path in enumerate(self.paths(p))}
        return self._path_index[p]

    def labels(self, path: IndexPath) -> LabelPath:
        vertices = self.digraph.vertices
        return tuple(vertices[i] for i in path)

    # --- Omega ---

    def omega(self, p: int) -> OmegaBasis:
        """
        Basis of Omega_p.

        For p >= 2 this is the kernel of the raw boundary restricted to the
        non-allowed faces of A_p; Omega_0 and Omega_1 are the full spans.
        """
        if p in self._omega:
            return self._omega[p]

        ambient = self.paths(p)
        one = self.field.coerce(1)
        if p <= 1:
            vectors = [{i: one} for i in range(len(ambient))]
        else:
            allowed = self.path_index(p - 1)
            rows: dict[IndexPath, int] = {}
            columns: list[Vector] = []
            for path in ambient:
                col: Vector = {}
                for face, coef in boundary_terms(path).items():
                    if face in allowed:
                        continue
                    row = rows.setdefault(face, len(rows))
                    col[row] = self.field.coerce(coef)
                columns.append(col)
            vectors = kernel(columns, self.field)
            logger.debug(
                "Omega_%d: %d allowed paths, %d non-allowed faces, dim %d",
                p, len(ambient), len(rows), len(vectors),
            )

        basis = OmegaBasis(p, tuple(self.labels(x) for x in ambient), tuple(vectors))
        self._omega[p] = basis
        return basis

    # --- Boundaries ---

    def apply_raw_boundary(self, p: int, vec: Vector) -> dict[IndexPath, Scalar]:
        """Raw boundary of a combination of allowed p-paths, keyed by face tuple."""
        prime = self.field.prime
        paths = self.paths(p)
        out: dict = {}
        for i, coef in vec.items():
            face_terms = {f: self.field.coerce(c) for f, c in boundary_terms(paths[i]).items()}
            axpy(out, -coef, face_terms, prime)
        return out

    def boundary(self, p: int) -> SparseMatrix:
        """
        Matrix of the restricted boundary from the Omega_p basis into allowed
        (p-1)-path coordinates. At p = 0 this is the augmentation (one row).
        """
        if p in self._boundary:
            return self._boundary[p]

        upper = self.omega(p)
        if p == 0:
            one = self.field.coerce(1)
            matrix = SparseMatrix(1, upper.dim, [{0: one} for _ in range(upper.dim)], self.field)
        else:
            index = self.path_index(p - 1)
            columns = []
            for vec in upper.vectors:
                image = self.apply_raw_boundary(p, vec)
                columns.append({index[face]: c for face, c in image.items()})
            matrix = SparseMatrix(len(index), upper.dim, columns, self.field)
        self._boundary[p] = matrix
        return matrix

    def boundary_rank(self, p: int) -> int:
        if self.omega(p).dim == 0:
            return 0
        return self.boundary(p).rank()


# ============================================================================
# FUNCTIONAL FRONT
# ============================================================================

def allowed_paths(d: Digraph, p: int, path_limit: int = DEFAULT_PATH_LIMIT) -> list[LabelPath]:
    """A_p: vertex tuples of length p+1 whose consecutive pairs are arcs."""
    pc = PathComplex(d, path_limit=path_limit)
    return [pc.labels(x) for x in pc.paths(p)]


def omega_basis(d: Digraph, p: int, field: Field = RATIONALS) -> OmegaBasis:
    return PathComplex(d, field).omega(p)


def restricted_boundary(
    d: Digraph,
    p: int,
    lower: OmegaBasis,
    upper: OmegaBasis,
    field: Field = RATIONALS,
) -> SparseMatrix:
    """
    Matrix of the boundary from the upper basis (dimension p) into the
    allowed (p-1)-path coordinates of the lower basis.

    Raises:
        DimensionMismatchError: the bases are not for dimensions p-1 and p,
            or their ambient paths are not the allowed paths of d
    """
    if p < 1:
        raise DimensionMismatchError(f"restricted boundary needs p >= 1, got {p}")
    if upper.dimension != p or lower.dimension != p - 1:
        raise DimensionMismatchError(
            f"bases for dimensions ({lower.dimension}, {upper.dimension}) "
            f"do not fit p = {p}"
        )
    for basis in (lower, upper):
        allowed = allowed_paths(d, basis.dimension)
        if set(basis.ambient) != set(allowed):
            raise DimensionMismatchError(
                f"basis for dimension {basis.dimension} has {len(basis.ambient)} "
                f"ambient paths, d has {len(allowed)} allowed paths"
            )
    index = {path: i for i, path in enumerate(lower.ambient)}
    prime = field.prime
    columns: list[Vector] = []
    for vec in upper.vectors:
        acc: dict = {}
        for i, coef in vec.items():
            terms = {f: field.coerce(c) for f, c in boundary_terms(upper.ambient[i]).items()}
            axpy(acc, -coef, terms, prime)
        try:
            columns.append({index[face]: c for face, c in acc.items()})
        except KeyError as exc:
            raise DimensionMismatchError(
                f"boundary leaves the lower basis ambient at face {exc.args[0]}"
            ) from None
    return SparseMatrix(len(lower.ambient), len(upper.vectors), columns, field)
