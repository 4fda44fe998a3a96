"""Linear algebra over Z/eZ."""
from math import gcd

from sympy import Matrix

from cft_construct.core.exceptions import InconsistentSystemError, NotInvertibleError
from cft_construct.core.lattice import IntMatrix, mat_vec, smith_form, spans_quotient, transpose


def solve_mod_e(M: IntMatrix, rhs: list[int], e: int) -> list[int]:
    """Solve M * c = rhs over Z/eZ through the Smith normal form of M.

    Args:
        M: An m x n integer matrix
        rhs: The right hand side, of length m
        e: The modulus

    Returns:
        list[int]: A solution with entries in [0, e)

    Raises:
        InconsistentSystemError: If the system has no solution
    """
    if not M:
        return []
    rows, cols = len(M), len(M[0])
    D, U, V = smith_form(M)
    target = mat_vec(U, rhs, e)

    y = [0] * cols
    for i in range(rows):
        d = D[i][i] if i < cols else 0
        g = gcd(d, e)
        if target[i] % g:
            raise InconsistentSystemError(f"M * c = {rhs} has no solution modulo {e}")
        if i < cols and d % e:
            modulus = e // g
            y[i] = (target[i] // g) * pow(d // g, -1, modulus) % modulus
    return mat_vec(V, y, e)


def invert_mod_e(M: IntMatrix, e: int) -> IntMatrix:
    """Inverse of a square matrix over Z/eZ.

    Raises:
        NotInvertibleError: If det(M) is not a unit modulo e
    """
    if not M:
        return []
    try:
        inverse = Matrix(M).inv_mod(e)
    except ValueError as exc:
        raise NotInvertibleError(f"Matrix is not invertible modulo {e}: {exc}") from exc
    return [[int(inverse[i, j]) % e for j in range(inverse.cols)] for i in range(inverse.rows)]


def is_invertible_mod_e(M: IntMatrix, e: int) -> bool:
    if not M:
        return True
    return gcd(int(Matrix(M).det()), e) == 1


def is_surjective(R: IntMatrix, moduli: list[int]) -> bool:
    """Check that the columns of R generate Z/n_1 x ... x Z/n_m."""
    return spans_quotient(transpose(R), moduli)
