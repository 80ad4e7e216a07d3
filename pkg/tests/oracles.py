"""Independent brute-force oracles.

Nothing here imports the library. Field arithmetic is rebuilt from
polynomial multiplication, matrices are handled with plain numpy and the
centralizer of e_i is written down by hand: commuting with
(0 0 I; 0 0 0; 0 0 0) forces the block shape (P Q R; 0 S T; 0 0 P).
"""

import itertools

import numpy as np


# -- fields ---------------------------------------------------------------

def poly_mulmod(a, b, modulus, p):
    """Product of coefficient lists (low degree first) modulo a monic ``modulus``."""
    k = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for t in range(k + 1):
                prod[d - k + t] = (prod[d - k + t] - c * modulus[t]) % p
    return (prod + [0] * k)[:k]


def int_to_poly(x, p, k):
    return [(x // p**j) % p for j in range(k)]


def poly_to_int(c, p):
    return sum(v * p**j for j, v in enumerate(c))


def is_irreducible_bruteforce(modulus, p):
    """No monic factor of degree 1..k/2 (checked by multiplying out every candidate pair)."""
    k = len(modulus) - 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            f = list(low) + [1]
            # divide modulus by f
            rem = list(modulus)
            for s in range(k - d, -1, -1):
                c = rem[s + d]
                if c:
                    for t in range(d + 1):
                        rem[s + t] = (rem[s + t] - c * f[t]) % p
            if not any(rem[:d]):
                return False
    return True


def smallest_irreducible(p, k):
    """Lexicographically smallest monic irreducible, comparing coefficients low degree first."""
    for low in itertools.product(range(p), repeat=k):
        cand = list(low) + [1]  # tuple order on (c_0, ..., c_{k-1})
        if is_irreducible_bruteforce(cand, p):
            return cand
    raise AssertionError("no irreducible found")


def field_tables(p, k):
    """(add, mul) tables of GF(p^k) on the integer encoding sum c_j p^j."""
    q = p**k
    modulus = smallest_irreducible(p, k) if k > 1 else [0, 1]
    polys = [int_to_poly(x, p, k) for x in range(q)]
    add = np.zeros((q, q), dtype=np.int64)
    mul = np.zeros((q, q), dtype=np.int64)
    for x in range(q):
        for y in range(q):
            add[x, y] = poly_to_int([(a + b) % p for a, b in zip(polys[x], polys[y])], p)
            if k == 1:
                mul[x, y] = (x * y) % p
            else:
                mul[x, y] = poly_to_int(poly_mulmod(polys[x], polys[y], modulus, p), p)
    return add, mul


class Field:
    """Table-driven field used by the oracles."""

    def __init__(self, p, k=1):
        self.p, self.k, self.q = p, k, p**k
        self.add_t, self.mul_t = field_tables(p, k)

    def matmul(self, a, b):
        if self.k == 1:
            return np.matmul(a, b) % self.p
        inner = a.shape[-1]
        out = self.mul_t[a[..., :, 0, None], b[..., None, 0, :]]
        for t in range(1, inner):
            out = self.add_t[out, self.mul_t[a[..., :, t, None], b[..., None, t, :]]]
        return out

    def neg(self, a):
        if self.k == 1:
            return (-a) % self.p
        # additive inverse: the y with add(x, y) = 0
        inv = np.argmax(self.add_t == 0, axis=1)
        return inv[a]

    def sub(self, a, b):
        return self.add_t[a, self.neg(b)]

    def power(self, a, e):
        out = a
        for _ in range(e - 1):
            out = self.matmul(out, a)
        return out

    def rank(self, m):
        """Rank of one matrix by Gaussian elimination with table arithmetic."""
        m = np.array(m, dtype=np.int64)
        rows, cols = m.shape
        inv = {x: y for x in range(1, self.q) for y in range(1, self.q) if self.mul_t[x, y] == 1}
        r = 0
        for c in range(cols):
            piv = next((i for i in range(r, rows) if m[i, c]), None)
            if piv is None:
                continue
            m[[r, piv]] = m[[piv, r]]
            m[r] = self.mul_t[inv[int(m[r, c])], m[r]]
            for i in range(rows):
                if i != r and m[i, c]:
                    m[i] = self.sub(m[i], self.mul_t[int(m[i, c]), m[r]])
            r += 1
        return r


def prime_power(q):
    for p in (2, 3, 5, 7):
        k, r = 0, q
        while r % p == 0:
            r //= p
            k += 1
        if r == 1:
            return p, k
    raise ValueError(q)


# -- enumerations -----------------------------------------------------------

def all_matrices(F, rows, cols, chunk=1 << 16):
    """Every rows x cols matrix over F, in chunks."""
    d = rows * cols
    total = F.q**d
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(total, lo + chunk))
        digits = np.stack([(idx // F.q**j) % F.q for j in range(d)], axis=1)
        yield digits.reshape(-1, rows, cols)


def nullcone(F, n):
    """All n x n matrices with x^p = 0."""
    out = []
    for mats in all_matrices(F, n, n):
        out.append(mats[~F.power(mats, F.p).any(axis=(1, 2))])
    return np.concatenate(out)


def count_pairs_oracle(n, q):
    """#{(A, B) : A^p = B^p = 0, AB = BA} by testing every pair of nullcone elements."""
    F = Field(*prime_power(q))
    nil = nullcone(F, n)
    total = 0
    for x in nil:
        comm = F.sub(F.matmul(x[None], nil), F.matmul(nil, x[None]))
        total += int((~comm.any(axis=(1, 2))).sum())
    return total


def count_by_x_oracle(n, q):
    """For each square-zero x, test all q^(n^2) matrices y."""
    F = Field(*prime_power(q))
    nil = nullcone(F, n)
    ys = np.concatenate(list(all_matrices(F, n, n)))
    ysq = ~F.power(ys, F.p).any(axis=(1, 2))
    ys = ys[ysq]
    total = 0
    for x in nil:
        comm = F.sub(F.matmul(x[None], ys), F.matmul(ys, x[None]))
        total += int((~comm.any(axis=(1, 2))).sum())
    return total


def centralizer_elements(F, n, i, chunk=1 << 16):
    """Every (P Q R; 0 S T; 0 0 P) with blocks (i, n-2i, i): the centralizer of e_i."""
    m = n - 2 * i
    shapes = [(i, i), (i, m), (i, i), (m, m), (m, i)]  # P Q R S T
    sizes = [a * b for a, b in shapes]
    d = sum(sizes)
    total = F.q**d
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(total, lo + chunk))
        digits = np.stack([(idx // F.q**j) % F.q for j in range(d)], axis=1)
        blocks = []
        off = 0
        for (a, b), s in zip(shapes, sizes):
            blocks.append(digits[:, off:off + s].reshape(len(idx), a, b))
            off += s
        P, Q, R, S, T = blocks
        x = np.zeros((len(idx), n, n), dtype=np.int64)
        x[:, :i, :i] = P
        x[:, :i, i:i + m] = Q
        x[:, :i, i + m:] = R
        x[:, i:i + m, i:i + m] = S
        x[:, i:i + m, i + m:] = T
        x[:, i + m:, i + m:] = P
        yield x


def e_matrix(n, i):
    e = np.zeros((n, n), dtype=np.int64)
    for t in range(i):
        e[t, n - i + t] = 1
    return e


def cent_nil_oracle(n, i, q):
    F = Field(*prime_power(q))
    count = 0
    for x in centralizer_elements(F, n, i):
        count += int((~F.power(x, F.p).any(axis=(1, 2))).sum())
    return count


def max_rank_oracle(n, i, q):
    F = Field(*prime_power(q))
    best = -1
    for x in centralizer_elements(F, n, i):
        x = x[~F.power(x, F.p).any(axis=(1, 2))]
        seen = set()
        for m in x:
            key = m.tobytes()
            if key in seen:
                continue
            seen.add(key)
            best = max(best, F.rank(m))
    return best


def gl_order_oracle(n, q):
    """Count invertible matrices directly (n <= 2 or tiny q)."""
    F = Field(*prime_power(q))
    return sum(sum(1 for m in mats if F.rank(m) == n) for mats in all_matrices(F, n, n))
