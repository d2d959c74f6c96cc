"""Dense polynomial arithmetic over a prime field F_p on plain lists of residues, lowest degree first.

These helpers back the extension-field multiplication and inversion in :class:`FieldCtx` and its irreducibility
test. A polynomial is trimmed when its last entry is nonzero; the zero polynomial is the empty list.
"""


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a: list[int], b: list[int], p: int) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def sub(a: list[int], b: list[int], p: int) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return trim(out)


def mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % p for c in out])


def divmod_(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    """Quotient and remainder of a by b, where b is nonzero.
    """
    if not b:
        raise ZeroDivisionError('Polynomial division by zero.')
    r = list(a)
    db = len(b) - 1
    if len(r) <= db:
        return [], trim(r)
    inv_lead = pow(b[-1], -1, p)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] % p
        if c:
            c = (c * inv_lead) % p
            q[i - db] = c
            for j in range(db + 1):
                r[i - db + j] -= c * b[j]
        r[i] = 0
    return trim(q), trim([c % p for c in r[:db]])


def mod(a: list[int], b: list[int], p: int) -> list[int]:
    return divmod_(a, b, p)[1]


def monic(a: list[int], p: int) -> list[int]:
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [(c * inv) % p for c in a]


def gcd(a: list[int], b: list[int], p: int) -> list[int]:
    """Monic greatest common divisor.
    """
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def inverse_mod(a: list[int], f: list[int], p: int) -> list[int]:
    """Inverse of a modulo f, by the extended Euclidean algorithm. Raises ZeroDivisionError when a and f are not
    coprime.
    """
    r0, r1 = list(f), mod(a, f, p)
    s0, s1 = [], [1]
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
    if len(r0) != 1:
        raise ZeroDivisionError('Element is not invertible modulo the given polynomial.')
    inv = pow(r0[0], -1, p)
    return [(c * inv) % p for c in s0]


def powmod(a: list[int], n: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = mod(a, f, p)
    while n:
        if n & 1:
            result = mod(mul(result, base, p), f, p)
        n >>= 1
        if n:
            base = mod(mul(base, base, p), f, p)
    return mod(result, f, p)


def is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial f of degree e over F_p: f is irreducible exactly when x^(p^e) = x mod f
    and f has no common factor with x^(p^d) - x for any proper divisor d of e.
    """
    e = len(f) - 1
    if e < 1:
        return False
    if e == 1:
        return True
    x = [0, 1]
    frob = [x]
    for _ in range(e):
        frob.append(powmod(frob[-1], p, f, p))
    if sub(frob[e], x, p):
        return False
    for d in range(1, e):
        if e % d == 0 and len(gcd(f, sub(frob[d], x, p), p)) > 1:
            return False
    return True
