"""Scalar plumbing for the two arithmetic modes.

Exact containers hold fractions.Fraction entries, approximate ones hold
binary64 floats.  A container never mixes modes: construction inspects the
entries once, and to_float() on the owning object is the only crossing.
Ints are welcome in either mode and promote to the container's type.
"""

from fractions import Fraction

from .errors import MixedModeError

__all__ = [
    "decide_mode",
    "as_exact",
    "coerce",
    "coerce_vector",
    "coerce_matrix",
    "fmt",
    "scalar_to_json",
    "max_abs",
    "flatten",
]


def _is_int(v):
    return isinstance(v, int) and not isinstance(v, bool)


def decide_mode(values):
    """True when every entry is exact (int or Fraction).

    A single float forces binary64 mode; a float meeting a Fraction in the
    same container is a hard error rather than a silent promotion.
    """
    saw_float = False
    saw_frac = False
    for v in values:
        if isinstance(v, Fraction):
            saw_frac = True
        elif isinstance(v, float):
            saw_float = True
        elif not _is_int(v):
            raise MixedModeError(f"unsupported scalar {v!r}")
    if saw_float and saw_frac:
        raise MixedModeError("exact rationals mixed with binary64 values")
    return not saw_float


def as_exact(v):
    if isinstance(v, Fraction):
        return v
    if _is_int(v):
        return Fraction(v)
    raise MixedModeError(f"binary64 value {v!r} used in an exact context")


def coerce(v, exact):
    return as_exact(v) if exact else float(v)


def coerce_vector(xs, exact):
    return tuple(coerce(v, exact) for v in xs)


def coerce_matrix(rows, exact):
    return tuple(tuple(coerce(v, exact) for v in row) for row in rows)


def fmt(v):
    """Render a scalar for reports and files.

    Exact values serialize as integer or "p/q" strings so they survive a
    round trip; floats use 17 significant digits for the same reason.
    """
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return str(v.numerator)
        return f"{v.numerator}/{v.denominator}"
    if _is_int(v):
        return str(v)
    return f"{float(v):.17g}"


def scalar_to_json(v):
    """JSON payload for a scalar: string in exact mode, number otherwise."""
    if isinstance(v, Fraction) or _is_int(v):
        return fmt(v)
    return float(v)


def flatten(nested):
    """Yield scalars from arbitrarily nested sequences."""
    stack = [nested]
    while stack:
        item = stack.pop()
        if isinstance(item, (list, tuple)):
            stack.extend(item)
        else:
            yield item


def max_abs(nested):
    """Largest |entry| over a nested container, in the entries' own type.

    Empty input gives integer 0, which both modes accept.
    """
    best = 0
    for v in flatten(nested):
        a = -v if v < 0 else v
        if a > best:
            best = a
    return best
