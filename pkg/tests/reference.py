"""Brute-force reference implementations used as independent test oracles.

Everything here evaluates the defining sums directly with plain Python loops
over subsets; nothing is shared with the fast library code paths.
"""


def bits(x: int) -> int:
    return bin(x).count("1")


def sign(x: int) -> float:
    return -1.0 if bits(x) & 1 else 1.0


def dsft_reference(model: int, values, n: int) -> list[float]:
    """Forward transform coefficient sums, one frequency at a time."""
    size = 1 << n
    full = size - 1
    out = [0.0] * size
    for B in range(size):
        acc = 0.0
        for A in range(size):
            if model == 1:
                if A & B == 0:
                    acc += values[A]
            elif model == 2:
                if B & ~A == 0:
                    acc += sign(A & B) * values[A]
            elif model == 3:
                if A & ~B == 0:
                    acc += sign(A) * values[A]
            elif model == 4:
                if A | B == full:
                    acc += sign(A & B) * values[A]
            elif model == 5:
                acc += sign(A & B) * values[A]
            else:
                raise ValueError(model)
        out[B] = acc
    return out


def idsft_reference(model: int, coeffs, n: int) -> list[float]:
    """Inverse transform sums."""
    size = 1 << n
    full = size - 1
    out = [0.0] * size
    for A in range(size):
        acc = 0.0
        for B in range(size):
            if model == 1:
                if A | B == full:
                    acc += sign(A & B) * coeffs[B]
            elif model == 2:
                if A & ~B == 0:
                    acc += sign(A & B) * coeffs[B]
            elif model == 3:
                if B & ~A == 0:
                    acc += sign(B) * coeffs[B]
            elif model == 4:
                if A & B == 0:
                    acc += coeffs[B]
            elif model == 5:
                acc += sign(A & B) * coeffs[B]
            else:
                raise ValueError(model)
        out[A] = acc * (0.5**n if model == 5 else 1.0)
    return out


def shift_reference(model: int, i: int, values, n: int) -> list[float]:
    """Elementary shift by x_i acting on the signal values."""
    size = 1 << n
    bit = 1 << (i - 1)
    out = [0.0] * size
    for A in range(size):
        if model == 1:
            out[A] = values[A] + values[A & ~bit] if A & bit else 0.0
        elif model == 2:
            out[A] = values[A] + values[A | bit] if not A & bit else 0.0
        elif model == 3:
            out[A] = values[A & ~bit]
        elif model == 4:
            out[A] = values[A | bit]
        elif model == 5:
            out[A] = values[A ^ bit]
        else:
            raise ValueError(model)
    return out


def convolve_reference(model: int, taps: dict, values, n: int) -> list[float]:
    """Convolution sums, directly from their defining formulas."""
    size = 1 << n
    full = size - 1
    out = [0.0] * size
    if model == 1:
        for Q, h in taps.items():
            for B in range(size):
                out[Q | B] += h * values[B]
    elif model == 2:
        for A in range(size):
            acc = 0.0
            for Q, h in taps.items():
                if Q & A:
                    continue  # requires Q subseteq N \ A
                sub = Q
                while True:
                    acc += h * values[A | sub]
                    if sub == 0:
                        break
                    sub = (sub - 1) & Q
            out[A] = acc
    else:
        for A in range(size):
            acc = 0.0
            for Q, h in taps.items():
                if model == 3:
                    acc += h * values[A & ~Q]
                elif model == 4:
                    acc += h * values[A | Q]
                else:
                    acc += h * values[A ^ Q]
            out[A] = acc
    assert full == size - 1
    return out


def coverage_reference(offset: float, weights: dict, n: int) -> list[float]:
    """Evaluate a coverage representation: c + total weight touching A."""
    size = 1 << n
    out = []
    for A in range(size):
        total = offset
        for B, w in weights.items():
            if B & A:
                total += w
        out.append(total)
    return out
