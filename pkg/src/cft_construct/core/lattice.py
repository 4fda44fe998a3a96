"""Integer lattice routines shared by the class group and the Z/eZ linear algebra."""
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

IntMatrix = list[list[int]]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(left: IntMatrix, right: IntMatrix, modulus: int | None = None) -> IntMatrix:
    """Multiply two integer matrices, optionally reducing the entries."""
    if not left:
        return []
    inner = len(right)
    cols = len(right[0]) if right else 0
    product = [
        [sum(left[i][t] * right[t][j] for t in range(inner)) for j in range(cols)]
        for i in range(len(left))
    ]
    if modulus is not None:
        product = [[entry % modulus for entry in row] for row in product]
    return product


def mat_vec(matrix: IntMatrix, vector: list[int], modulus: int | None = None) -> list[int]:
    result = [sum(a * b for a, b in zip(row, vector)) for row in matrix]
    if modulus is not None:
        result = [entry % modulus for entry in result]
    return result


def transpose(matrix: IntMatrix) -> IntMatrix:
    return [list(col) for col in zip(*matrix)]


def _swap_rows(matrix: IntMatrix, i: int, j: int) -> None:
    matrix[i], matrix[j] = matrix[j], matrix[i]


def _swap_cols(matrix: IntMatrix, i: int, j: int) -> None:
    for row in matrix:
        row[i], row[j] = row[j], row[i]


def _add_row(matrix: IntMatrix, target: int, source: int, factor: int) -> None:
    matrix[target] = [a + factor * b for a, b in zip(matrix[target], matrix[source])]


def _add_col(matrix: IntMatrix, target: int, source: int, factor: int) -> None:
    for row in matrix:
        row[target] += factor * row[source]


def smith_form(matrix: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form over Z with unimodular transforms.

    Args:
        matrix: An m x n integer matrix

    Returns:
        (D, U, V) with U * matrix * V == D, D diagonal with non-negative
        entries d_1 | d_2 | ... and U, V unimodular.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    D = [list(row) for row in matrix]
    U = identity(rows)
    V = identity(cols)

    for t in range(min(rows, cols)):
        entries = [(abs(D[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if D[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        _swap_rows(D, t, i)
        _swap_rows(U, t, i)
        _swap_cols(D, t, j)
        _swap_cols(V, t, j)

        while True:
            for i in range(t + 1, rows):
                q = D[i][t] // D[t][t]
                if q:
                    _add_row(D, i, t, -q)
                    _add_row(U, i, t, -q)
            for j in range(t + 1, cols):
                q = D[t][j] // D[t][t]
                if q:
                    _add_col(D, j, t, -q)
                    _add_col(V, j, t, -q)

            leftovers = [(abs(D[i][t]), i, t) for i in range(t + 1, rows) if D[i][t]]
            leftovers += [(abs(D[t][j]), t, j) for j in range(t + 1, cols) if D[t][j]]
            if leftovers:
                _, i, j = min(leftovers)
                if j == t:
                    _swap_rows(D, t, i)
                    _swap_rows(U, t, i)
                else:
                    _swap_cols(D, t, j)
                    _swap_cols(V, t, j)
                continue

            offender = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if D[i][j] % D[t][t]),
                None,
            )
            if offender is None:
                break
            _add_row(D, t, offender, 1)
            _add_row(U, t, offender, 1)

        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]

    return D, U, V


def lattice_invariants(rows: IntMatrix, dimension: int) -> tuple[int, int]:
    """Rank and covolume (product of the non-zero invariant factors) of a row lattice."""
    if not rows:
        return 0, 1
    factors = [abs(int(f)) for f in invariant_factors(Matrix(rows), domain=ZZ)]
    nonzero = [f for f in factors if f]
    covolume = 1
    for f in nonzero:
        covolume *= f
    return min(len(nonzero), dimension), covolume


def spans_quotient(generators: IntMatrix, moduli: list[int]) -> bool:
    """Check whether the given vectors generate the group Z/n_1 x ... x Z/n_m.

    Args:
        generators: Row vectors with one coordinate per cyclic factor
        moduli: The orders n_i of the cyclic factors

    Returns:
        bool: True if the images of the rows generate the whole group
    """
    moduli = list(moduli)
    if not moduli or all(n == 1 for n in moduli):
        return True
    relations = [[n if i == j else 0 for j in range(len(moduli))] for i, n in enumerate(moduli)]
    rank, covolume = lattice_invariants(list(generators) + relations, len(moduli))
    return rank == len(moduli) and covolume == 1
