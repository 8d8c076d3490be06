# -*- coding: utf-8 -*-

"""Exact linear algebra over GF(2).

Vectors of length 2g are stored as Python integers, bit ``i`` holding the coefficient of the ``i``-th basis
element in the order ``a_1, ..., a_g, b_1, ..., b_g``. Matrices are read-only :mod:`numpy` arrays of ``uint8``.
"""

import itertools as itt
import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from mcgz2.constants import DEFAULT_GENUS
from mcgz2.exceptions import DimensionError, NotABasisError

__all__ = [
    'BitVec',
    'BitMatrix',
    'AffineSolution',
    'RowLike',
    'rank',
    'solve_affine',
    'symplectic_form',
    'pairing',
    'is_symplectic',
    'expand_in_basis',
    'parity',
    'transvection_matrix',
]

logger = logging.getLogger(__name__)


def parity(x: int) -> int:
    """Return the number of set bits of ``x`` modulo 2."""
    return bin(x).count('1') & 1


@dataclass(frozen=True)
class BitVec:
    """A vector of length 2g over GF(2)."""

    bits: int
    genus: int = DEFAULT_GENUS

    def __post_init__(self) -> None:
        if self.genus < 1:
            raise DimensionError(f'genus must be positive, got {self.genus}')
        if self.bits < 0 or self.bits >> self.dimension:
            raise DimensionError(f'{self.bits:#x} does not fit in {self.dimension} bits')

    @property
    def dimension(self) -> int:
        """The length of the vector, 2g."""
        return 2 * self.genus

    @classmethod
    def from_string(cls, text: str) -> 'BitVec':
        """Parse a string of ``0``/``1`` characters, character ``i`` being coordinate ``i``.

        :raises DimensionError: if the length is odd or a character is not a bit
        """
        text = text.strip()
        if not text or len(text) % 2 or set(text) - {'0', '1'}:
            raise DimensionError(f'not a bit string of even length: {text!r}')
        return cls.from_bits((int(c) for c in text), genus=len(text) // 2)

    @classmethod
    def from_bits(cls, values: Iterable[int], genus: Optional[int] = None) -> 'BitVec':
        """Build a vector from a sequence of 0/1 coordinates.

        :param values: the coordinates in basis order
        :param genus: the expected genus. If None, it is inferred from the length.
        """
        values = [int(v) & 1 for v in values]
        if genus is None:
            if len(values) % 2:
                raise DimensionError(f'odd number of coordinates: {len(values)}')
            genus = len(values) // 2
        if len(values) != 2 * genus:
            raise DimensionError(f'expected {2 * genus} coordinates, got {len(values)}')
        bits = 0
        for index, value in enumerate(values):
            bits |= value << index
        return cls(bits, genus)

    @classmethod
    def zero(cls, genus: int = DEFAULT_GENUS) -> 'BitVec':
        """Return the zero vector."""
        return cls(0, genus)

    @classmethod
    def unit(cls, index: int, genus: int = DEFAULT_GENUS) -> 'BitVec':
        """Return the ``index``-th standard basis vector."""
        if not 0 <= index < 2 * genus:
            raise DimensionError(f'index {index} out of range for genus {genus}')
        return cls(1 << index, genus)

    def _check_compatible(self, other: 'BitVec') -> None:
        if not isinstance(other, BitVec):
            raise TypeError(f'expected a BitVec, got {type(other).__name__}')
        if other.genus != self.genus:
            raise DimensionError(f'length mismatch: {self.dimension} != {other.dimension}')

    def __add__(self, other: 'BitVec') -> 'BitVec':
        self._check_compatible(other)
        return BitVec(self.bits ^ other.bits, self.genus)

    __sub__ = __add__

    def dot(self, other: 'BitVec') -> int:
        """Return the standard (non-symplectic) dot product."""
        self._check_compatible(other)
        return parity(self.bits & other.bits)

    def __bool__(self) -> bool:
        return self.bits != 0

    def __len__(self) -> int:
        return self.dimension

    def __getitem__(self, index: int) -> int:
        if not 0 <= index < self.dimension:
            raise IndexError(index)
        return (self.bits >> index) & 1

    def __iter__(self) -> Iterator[int]:
        return ((self.bits >> i) & 1 for i in range(self.dimension))

    def support(self) -> List[int]:
        """Return the indices of the nonzero coordinates."""
        return [i for i in range(self.dimension) if (self.bits >> i) & 1]

    @property
    def weight(self) -> int:
        """The number of nonzero coordinates."""
        return bin(self.bits).count('1')

    def to_array(self) -> np.ndarray:
        """Return the coordinates as a :mod:`numpy` vector."""
        return np.fromiter(self, dtype=np.uint8, count=self.dimension)

    def __str__(self) -> str:
        return ''.join(str(b) for b in self)

    def __repr__(self) -> str:
        return f'BitVec({str(self)!r})'

    def to_json(self) -> str:
        """Return a representation of the instance suitable for passing in to JSON conversion."""
        return str(self)


RowLike = Union[BitVec, str, Sequence[int]]


def _row_values(row: RowLike) -> List[int]:
    if isinstance(row, BitVec):
        return list(row)
    if isinstance(row, str):
        if set(row) - {'0', '1'}:
            raise DimensionError(f'not a bit string: {row!r}')
        return [int(c) for c in row]
    return [int(v) & 1 for v in row]


class BitMatrix:
    """An immutable matrix over GF(2). Matrices act on column vectors."""

    __slots__ = ('_array',)

    def __init__(self, array: np.ndarray) -> None:
        """Wrap a 2-dimensional array, reducing its entries mod 2."""
        array = np.array(array, dtype=np.int64) % 2
        if array.ndim != 2:
            raise DimensionError(f'expected a 2-dimensional array, got {array.ndim} dimensions')
        array = array.astype(np.uint8)
        array.setflags(write=False)
        self._array = array

    @classmethod
    def from_rows(cls, rows: Sequence[RowLike]) -> 'BitMatrix':
        """Build a matrix from its rows.

        :raises DimensionError: if the rows are ragged
        """
        values = [_row_values(row) for row in rows]
        if not values:
            return cls(np.zeros((0, 0), dtype=np.uint8))
        width = len(values[0])
        if any(len(row) != width for row in values):
            raise DimensionError(f'ragged rows: lengths {sorted({len(row) for row in values})}')
        return cls(np.array(values, dtype=np.uint8).reshape(len(values), width))

    @classmethod
    def from_columns(cls, columns: Sequence[BitVec]) -> 'BitMatrix':
        """Build a matrix whose ``j``-th column is ``columns[j]``."""
        return cls.from_rows(columns).transpose()

    @classmethod
    def identity(cls, n: int) -> 'BitMatrix':
        """Return the ``n`` by ``n`` identity matrix."""
        return cls(np.eye(n, dtype=np.uint8))

    @classmethod
    def zeros(cls, n: int, m: Optional[int] = None) -> 'BitMatrix':
        """Return the ``n`` by ``m`` zero matrix."""
        return cls(np.zeros((n, n if m is None else m), dtype=np.uint8))

    @property
    def array(self) -> np.ndarray:
        """The read-only underlying array."""
        return self._array

    @property
    def shape(self) -> Tuple[int, int]:
        """The number of rows and columns."""
        return self._array.shape[0], self._array.shape[1]

    def rows(self) -> List[BitVec]:
        """Return the rows as vectors."""
        return [BitVec.from_bits(row) for row in self._array]

    def columns_as_ints(self) -> List[int]:
        """Return each column packed into an integer, entry ``i`` at bit ``i``."""
        n_rows, n_cols = self.shape
        weights = np.left_shift(1, np.arange(n_rows, dtype=np.int64))
        return [int(weights[self._array[:, j] == 1].sum()) for j in range(n_cols)]

    def transpose(self) -> 'BitMatrix':
        """Return the transposed matrix."""
        return BitMatrix(self._array.T)

    def __matmul__(self, other):
        if isinstance(other, BitVec):
            return self.apply(other)
        if not isinstance(other, BitMatrix):
            return NotImplemented
        if self.shape[1] != other.shape[0]:
            raise DimensionError(f'cannot multiply {self.shape} by {other.shape}')
        return BitMatrix(self._array.astype(np.int64) @ other._array.astype(np.int64))

    def apply(self, vector: BitVec) -> BitVec:
        """Multiply the column vector ``vector`` on the left by this matrix."""
        if self.shape[1] != vector.dimension:
            raise DimensionError(f'cannot apply a {self.shape} matrix to a vector of length {vector.dimension}')
        image = (self._array.astype(np.int64) @ vector.to_array().astype(np.int64)) % 2
        return BitVec.from_bits(image)

    def __pow__(self, exponent: int) -> 'BitMatrix':
        if exponent < 0:
            return self.inverse() ** -exponent
        result = BitMatrix.identity(self.shape[0])
        base = self
        while exponent:
            if exponent & 1:
                result = result @ base
            base = base @ base
            exponent >>= 1
        return result

    def inverse(self) -> 'BitMatrix':
        """Return the inverse matrix.

        :raises NotABasisError: if the matrix is singular
        """
        n_rows, n_cols = self.shape
        if n_rows != n_cols:
            raise DimensionError(f'cannot invert a {self.shape} matrix')
        reduced, pivots = _row_reduce(np.hstack([self._array, np.eye(n_rows, dtype=np.uint8)]), n_cols)
        if len(pivots) < n_rows:
            raise NotABasisError(rank=len(pivots), dimension=n_rows)
        return BitMatrix(reduced[:, n_cols:])

    def is_identity(self) -> bool:
        """Return True if this is a square identity matrix."""
        n_rows, n_cols = self.shape
        return n_rows == n_cols and bool(np.array_equal(self._array, np.eye(n_rows, dtype=np.uint8)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._array, other._array))

    def __hash__(self) -> int:
        return hash((self.shape, self._array.tobytes()))

    def __repr__(self) -> str:
        return f'BitMatrix({self.to_json()!r})'

    def to_json(self) -> List[str]:
        """Return a representation of the instance suitable for passing in to JSON conversion."""
        return [''.join(str(int(v)) for v in row) for row in self._array]


def _row_reduce(array: np.ndarray, n_pivot_columns: Optional[int] = None) -> Tuple[np.ndarray, List[int]]:
    """Bring a copy of ``array`` to reduced row echelon form over GF(2).

    Pivots are only searched for in the first ``n_pivot_columns`` columns.

    :returns: the reduced array and the list of pivot columns
    """
    reduced = np.array(array, dtype=np.uint8, copy=True)
    n_rows = reduced.shape[0]
    n_pivot_columns = reduced.shape[1] if n_pivot_columns is None else n_pivot_columns
    pivots: List[int] = []
    r = 0
    for j in range(n_pivot_columns):
        if r == n_rows:
            break
        candidates = np.nonzero(reduced[r:, j])[0]
        if not len(candidates):
            continue
        i = r + candidates[0]
        if i != r:
            reduced[[r, i]] = reduced[[i, r]]
        others = np.nonzero(reduced[:, j])[0]
        for k in others:
            if k != r:
                reduced[k] ^= reduced[r]
        pivots.append(j)
        r += 1
    return reduced, pivots


def _as_array(m: Union[BitMatrix, Sequence[RowLike]]) -> np.ndarray:
    if isinstance(m, BitMatrix):
        return m.array
    return BitMatrix.from_rows(m).array


def rank(m: Union[BitMatrix, Sequence[RowLike]]) -> int:
    """Compute the row rank over GF(2).

    :param m: a matrix or a list of rows of equal length
    :raises DimensionError: if the rows are ragged
    """
    array = _as_array(m)
    if array.size == 0:
        return 0
    return len(_row_reduce(array)[1])


@dataclass(frozen=True)
class AffineSolution:
    """The solution set of ``a x = b``: ``particular + span(kernel)``, or nothing."""

    consistent: bool
    particular: Optional[BitVec]
    kernel: Tuple[BitVec, ...]

    def __len__(self) -> int:
        return (1 << len(self.kernel)) if self.consistent else 0

    def __iter__(self) -> Iterator[BitVec]:
        if not self.consistent:
            return
        for mask in itt.product((0, 1), repeat=len(self.kernel)):
            vector = self.particular
            for bit, generator in zip(mask, self.kernel):
                if bit:
                    vector = vector + generator
            yield vector

    def __contains__(self, vector: BitVec) -> bool:
        if not self.consistent:
            return False
        difference = vector + self.particular
        if not difference:
            return True
        return rank(list(self.kernel) + [difference]) == len(self.kernel)

    def to_json(self):
        """Return a representation of the instance suitable for passing in to JSON conversion."""
        if not self.consistent:
            return 'inconsistent'
        return {
            'particular': str(self.particular),
            'kernel': [str(v) for v in self.kernel],
        }


def solve_affine(a: Union[BitMatrix, Sequence[RowLike]], b: Union[BitVec, Sequence[int]]) -> AffineSolution:
    """Solve ``a x = b`` over GF(2).

    :param a: the coefficient matrix; ``x`` has as many coordinates as ``a`` has columns, which must be even
    :param b: the right hand side, one bit per row of ``a``
    :raises DimensionError: if ``b`` does not have one entry per row, or ``a`` has an odd number of columns
    """
    array = _as_array(a)
    rhs = np.array(list(b), dtype=np.uint8).reshape(-1, 1) % 2
    n_rows, n_cols = array.shape
    if rhs.shape[0] != n_rows:
        raise DimensionError(f'{n_rows} equations but {rhs.shape[0]} right hand sides')
    if n_cols % 2:
        raise DimensionError(f'unknowns must have even length, got {n_cols}')
    genus = n_cols // 2

    reduced, pivots = _row_reduce(np.hstack([array, rhs]), n_cols)
    inconsistent_rows = np.nonzero(reduced[len(pivots):, n_cols])[0]
    if len(inconsistent_rows):
        logger.debug('system with %d equations is inconsistent', n_rows)
        return AffineSolution(consistent=False, particular=None, kernel=())

    particular = [0] * n_cols
    for row, column in enumerate(pivots):
        particular[column] = int(reduced[row, n_cols])

    kernel = []
    for free in (j for j in range(n_cols) if j not in pivots):
        vector = [0] * n_cols
        vector[free] = 1
        for row, column in enumerate(pivots):
            vector[column] = int(reduced[row, free])
        kernel.append(BitVec.from_bits(vector, genus))

    return AffineSolution(
        consistent=True,
        particular=BitVec.from_bits(particular, genus),
        kernel=tuple(kernel),
    )


def symplectic_form(genus: int = DEFAULT_GENUS) -> BitMatrix:
    """Return the matrix ``J`` of the mod-2 intersection form, ``<a_i, b_j> = delta_ij``."""
    array = np.zeros((2 * genus, 2 * genus), dtype=np.uint8)
    for i in range(genus):
        array[i, genus + i] = array[genus + i, i] = 1
    return BitMatrix(array)


def pairing(u: BitVec, v: BitVec) -> int:
    """Evaluate the mod-2 intersection form ``u^T J v``."""
    if u.genus != v.genus:
        raise DimensionError(f'length mismatch: {u.dimension} != {v.dimension}')
    mask = (1 << u.genus) - 1
    return parity(((u.bits & mask) & (v.bits >> u.genus)) ^ ((u.bits >> u.genus) & (v.bits & mask)))


def is_symplectic(m: BitMatrix, genus: Optional[int] = None) -> bool:
    """Return True if ``m^T J m = J``."""
    n_rows, n_cols = m.shape
    if n_rows != n_cols or n_rows % 2:
        return False
    form = symplectic_form(n_rows // 2 if genus is None else genus)
    if form.shape != m.shape:
        return False
    return m.transpose() @ form @ m == form


def expand_in_basis(basis: Sequence[BitVec], vector: BitVec) -> BitVec:
    """Return the coordinates of ``vector`` in ``basis``.

    :raises NotABasisError: if ``basis`` is not a basis
    """
    if len(basis) != vector.dimension:
        raise NotABasisError(rank=rank(list(basis)) if basis else 0, dimension=vector.dimension)
    return BitMatrix.from_columns(basis).inverse().apply(vector)


def transvection_matrix(c: BitVec) -> BitMatrix:
    """Return the matrix of ``x -> x + <x, c> c``, that is ``I + c (J c)^T``."""
    column = c.to_array().astype(np.int64)
    row = symplectic_form(c.genus).apply(c).to_array().astype(np.int64)
    return BitMatrix(np.eye(c.dimension, dtype=np.int64) + np.outer(column, row))
