"""Pure-Python versions of the number-theory kernels.

Same signatures and results as the compiled ``_kernels`` module; used when
the extension is not built or ``OSC_PURE_PYTHON=1`` is set.
"""

# deterministic for every n < 3.3e24, hence for all 64-bit inputs
WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime(n):
    if n < 2:
        return False
    for p in _SMALL:
        if n % p == 0:
            return n == p
    if n < 2209:  # 47 * 47
        return True
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def fill_prime_mask(values, out):
    for i, v in enumerate(values):
        out[i] = 1 if is_prime(int(v)) else 0


def is_isolated(p, radius):
    """True iff ``p`` is prime and no other prime lies in ``[p-radius, p+radius]``."""
    if not is_prime(p):
        return False
    for d in range(1, radius + 1):
        if is_prime(p + d) or (p >= d and is_prime(p - d)):
            return False
    return True


def find_isolated(a, b, radius, max_k):
    for k in range(max_k + 1):
        if is_isolated(a + b * k, radius):
            return k
    return -1


def constellation(b, residues, wanted, max_k):
    residues = [int(r) for r in residues]
    wanted = [bool(x) for x in wanted]
    n = len(residues)
    for k in range(max_k + 1):
        base = b * k
        for i in range(n):
            if is_prime(base + residues[i]) != wanted[i]:
                break
        else:
            return k
    return -1
