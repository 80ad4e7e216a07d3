"""Commuting pairs (A, B) with A^[p] = B^[p] = [A, B] = 0."""

from __future__ import annotations

from .errors import DimensionMismatch, FieldError, FieldMismatch, InvariantViolation
from .matff import block_diag, commutator, matrix_from_json, pth_power


def comm_pair_violation(a, b):
    """Name of the first defining equation that (a, b) fails, or None."""
    if a.ctx != b.ctx:
        raise FieldMismatch(f"{a.ctx!r} vs {b.ctx!r}")
    if not (a.is_square and b.is_square and a.shape == b.shape):
        raise DimensionMismatch(f"need two square matrices of equal size, got {a.shape}, {b.shape}")
    p = a.ctx.p
    if not pth_power(a).is_zero():
        return f"A^{p} = 0"
    if not pth_power(b).is_zero():
        return f"B^{p} = 0"
    if not commutator(a, b).is_zero():
        return "[A,B] = 0"
    return None


def is_comm_pair(a, b):
    return comm_pair_violation(a, b) is None


class CommPair:
    """A point (A, B) of the restricted nilpotent commuting variety."""

    __slots__ = ("A", "B")

    def __init__(self, a, b):
        bad = comm_pair_violation(a, b)
        if bad is not None:
            raise InvariantViolation(f"not a commuting pair: {bad} fails", bad)
        self.A = a
        self.B = b

    @property
    def ctx(self):
        return self.A.ctx

    @property
    def n(self):
        return self.A.rows

    def __iter__(self):
        return iter((self.A, self.B))

    def __eq__(self, other):
        return isinstance(other, CommPair) and self.A == other.A and self.B == other.B

    __hash__ = None

    def __repr__(self):
        return f"CommPair(A={self.A.tolist()}, B={self.B.tolist()}, {self.ctx!r})"

    def to_json(self):
        return {"p": self.ctx.p, "k": self.ctx.k, "n": self.n,
                "A": self.A.tolist(), "B": self.B.tolist()}

    @classmethod
    def from_json(cls, obj):
        for key in ("p", "k", "n", "A", "B"):
            if key not in obj:
                raise InvariantViolation(f"pair JSON is missing field '{key}'", key)
        n = obj["n"]
        mats = []
        for key in ("A", "B"):
            try:
                mats.append(matrix_from_json({"p": obj["p"], "k": obj["k"], "n_rows": n,
                                              "n_cols": n, "entries": obj[key]}))
            except InvariantViolation as exc:
                raise InvariantViolation(f"field '{key}': {exc}", key) from exc
        return cls(*mats)


def gl2_act(a, b, c, d, pair):
    """(a b; c d) . (A, B) = (aA + bB, cA + dB); characteristic 2 only."""
    ctx = pair.ctx
    if ctx.p != 2:
        raise FieldError("the GL(2) action preserves C only in characteristic 2")
    det = ctx.sub(ctx.mul(a, d), ctx.mul(b, c))
    if det == 0:
        raise InvariantViolation("coefficient matrix is singular", "ad - bc != 0")
    A, B = pair.A, pair.B
    return CommPair(a * A + b * B, c * A + d * B)


def block_sum(*pairs):
    return CommPair(block_diag(*(p.A for p in pairs)), block_diag(*(p.B for p in pairs)))
