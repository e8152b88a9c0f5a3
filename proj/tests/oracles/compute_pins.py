#!/usr/bin/env python3
"""Independent oracle for the regression pins frozen in tests/pinned_values.hpp.

Uses trial-division / numpy sieves and Python's exact Fraction type; shares no
code with the C++ library. Run: python3 tests/oracles/compute_pins.py
"""
import math
from fractions import Fraction

import numpy as np


def mobius_sieve(n):
    mu = np.ones(n + 1, dtype=np.int64)
    is_comp = np.zeros(n + 1, dtype=bool)
    for p in range(2, n + 1):
        if not is_comp[p]:
            is_comp[2 * p::p] = True
            mu[p::p] *= -1
            if p * p <= n:
                mu[p * p::p * p] = 0
    mu[0] = 0
    return mu


def primes_upto(n):
    s = np.ones(n + 1, dtype=bool)
    s[:2] = False
    for p in range(2, int(n ** 0.5) + 1):
        if s[p]:
            s[p * p::p] = False
    return np.nonzero(s)[0]


def mangoldt_table(n):
    lam = [0.0] * (n + 1)
    for p in primes_upto(n):
        p = int(p)
        lp = math.log(p)
        pk = p
        while pk <= n:
            lam[pk] = lp
            pk *= p
    return lam


def phi_of(n):
    r, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            r -= r // p
        p += 1
    if m > 1:
        r -= r // m
    return r


def main():
    mu = mobius_sieve(100000)
    print("# lambda_hat(N, q) = -sum_{d<=N, q|d} mu(d) log d / d (ascending d)")
    for N in (1000, 10000, 100000):
        for q in (1, 2, 3, 5, 6):
            s = 0.0
            for d in range(q, N + 1, q):
                m = int(mu[d])
                if m:
                    s += -(m * math.log(d)) / d
            print(f"N={N} q={q} value={s!r}")

    lam = mangoldt_table(1000016)
    psi = 0.0
    for n in range(1, 1000001):
        psi += lam[n]
    print(f"psi(1e6)/1e6 = {psi / 1e6!r}")
    psi4 = sum(lam[1:10001])
    print(f"psi(1e4)/1e4 = {psi4 / 1e4!r}")

    # twin-prime constant, product over odd primes up to 1e7
    prod = 1.0
    for p in primes_upto(10_000_000)[1:]:
        p = float(p)
        prod *= 1.0 - 1.0 / ((p - 1.0) ** 2)
    print(f"Pi_(p>2)(1-1/(p-1)^2) up to 1e7 = {prod!r}  (C2 = 0.66016181584686957392...)")

    N = 1000000
    for k in range(1, 9):
        a = 2 * k
        c = 0.0
        for n in range(1, N + 1):
            x = lam[n]
            if x:
                y = lam[n + a]
                if y:
                    c += x * y
        odd = 1.0
        m = k
        while m % 2 == 0:
            m //= 2
        p = 3
        while p * p <= m:
            if m % p == 0:
                odd *= (p - 1) / (p - 2)
                while m % p == 0:
                    m //= p
            p += 2
        if m > 1:
            odd *= (m - 1) / (m - 2)
        print(f"C(1e6,{a}) = {c!r}  ratio_vs_product = {c / (2 * 0.6601618158468696 * odd * N)!r}")

    # small HL example N=10, shift=2
    c10 = sum(lam[n] * lam[n + 2] for n in range(1, 11))
    print(f"C(10,2) = {c10!r}  = 2log3log5... check {math.log(3)*math.log(5)+math.log(5)*math.log(7)+math.log(2)*math.log(2)+math.log(3)*math.log(11)+math.log(7)*math.log(3)!r}")

    # gcd tail sums
    def tails(a, N):
        r = math.isqrt(N)
        low = sum(Fraction(math.gcd(a, l), l * l) for l in range(1, r + 1))
        mid = 0.0
        for l in range(r + 1, N + 1):
            mid += math.gcd(a, l) / (l * l)
        return low, mid
    low, mid = tails(2, 16)
    print(f"a=2 N=16 low={low} mid={mid!r}")
    low, mid = tails(2, 10000)
    print(f"a=2 N=1e4 low={float(low)!r} mid={mid!r}")

    # corollary pin: f'={1:1, 2:-1/2}, g'={1:2/3, 2:3/4}, N=1e4, delta=1/4
    fp = {1: Fraction(1), 2: Fraction(-1, 2)}
    gp = {1: Fraction(2, 3), 2: Fraction(3, 4)}
    fh = {1: fp[1] + fp[2] / 2, 2: fp[2] / 2}
    gh = {1: gp[1] + gp[2] / 2, 2: gp[2] / 2}
    N = 10000
    def ev(tp, m):
        return sum(v for q, v in tp.items() if m % q == 0)
    for a in (1, 2, 3):
        C = sum(ev(fp, n) * ev(gp, n + a) for n in range(1, N + 1))
        c2 = 1 if a % 2 == 0 else -1
        S = fh[1] * gh[1] + fh[2] * gh[2] * c2
        rem = abs(C - S * N)
        print(f"corollary a={a} C={C} S={S} rem={rem} normalized={float(rem) / N ** 0.75!r}")


if __name__ == "__main__":
    main()


def singular_series_oracle():
    """Partial singular series at l_max=1e5 from the literal exponential-sum-free
    Holder evaluation with numpy-sieved mu/phi, against the Euler product."""
    L = 100000
    mu = mobius_sieve(L)
    phi = np.arange(L + 1, dtype=np.int64)
    for p in primes_upto(L):
        phi[p::p] -= phi[p::p] // p
    C2 = 0.66016181584686957392
    base = None
    for k in range(1, 9):
        a = 2 * k
        s = 0.0
        for l in range(1, L + 1):
            if mu[l] == 0:
                continue
            g = math.gcd(a, l)
            c = int(mu[l // g]) * int(phi[l]) // int(phi[l // g])
            s += c / float(phi[l]) ** 2
        odd = 1.0
        for p in (3, 5, 7):
            if a % p == 0:
                odd *= (p - 1) / (p - 2)
        prod = 2 * C2 * odd
        if base is None:
            base = s
        print(f"S({a}) partial={s!r} product={prod!r} diff={s - prod:.3e} "
              f"ratio={s / base!r} odd={odd!r} ratio_err={s / base - odd:.3e}")


if __name__ == "__main__":
    singular_series_oracle()


def gcd_high_oracle():
    """sum_{sqrt N < l <= N^2} log^2(l) gcd(a, l) / l^2, direct in numpy chunks."""
    for a, N in ((2, 16), (2, 10000), (6, 10000)):
        r = math.isqrt(N)
        total = 0.0
        lo = r + 1
        hi = N * N
        step = 10_000_000
        while lo <= hi:
            top = min(hi, lo + step - 1)
            l = np.arange(lo, top + 1, dtype=np.float64)
            li = np.arange(lo, top + 1, dtype=np.int64)
            g = np.gcd(li, a).astype(np.float64)
            total += float(np.sum(np.log(l) ** 2 * g / (l * l)))
            lo = top + 1
        print(f"gcd high a={a} N={N} high={total!r}")


if __name__ == "__main__":
    gcd_high_oracle()


def gcd_many_divisors_oracle():
    """Low/mid tails for a = 720720 at N = 1e4, for the growth comparison with a = 2."""
    a, N = 720720, 10000
    r = math.isqrt(N)
    low = sum(math.gcd(a, l) / (l * l) for l in range(1, r + 1))
    mid = 0.0
    for l in range(r + 1, N + 1):
        mid += math.gcd(a, l) / (l * l)
    print(f"gcd a={a} N={N} low={low!r} mid={mid!r} mid_constant={mid * math.sqrt(N) / a ** 0.1!r}")


if __name__ == "__main__":
    gcd_many_divisors_oracle()
