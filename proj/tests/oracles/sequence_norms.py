# Reference values for the sequence norms and two closed-form function norms.
# Run: python3 sequence_norms.py
from mpmath import mp, mpf, inf, log, sqrt, psi, quad, zeta, diff, exp, expm1

mp.dps = 30
M = 5000


def series(f, a, c=0, s=None):
    # sum_{n>=a} f(n): direct head, Euler-Maclaurin up to f''' and the integral
    # in y = log(x+1) with the c*y^-s leading part done exactly
    head = sum(f(mpf(n)) for n in range(a, max(a, M)))
    m = mpf(max(a, M))
    Y = log(m + 1)
    # past y = 700 the remainder is below e^-700 and psi of e^y gets expensive
    g = lambda y: 0 if y > 700 else f(expm1(y)) * exp(y) - (c * y ** (-s) if c else 0)
    integral = quad(g, [Y, 2 * Y, 8 * Y, 700, inf]) + (c * Y ** (1 - s) / (s - 1) if c else 0)
    return head + integral + f(m) / 2 - diff(f, m) / 12 + diff(f, m, 3) / 720


def theta_e1(p):
    s = mpf(p) / 2
    return series(lambda n: 1 / (n * log(n + 1) ** s), 1, 1, s) ** (1 / mpf(p))


def theta_e1_double_star(p):
    # b** = 1/j, prefix sum of squares = zeta(2) - psi(1, n + 1)
    s = mpf(p) / 2
    S = lambda n: zeta(2) - psi(1, n + 1)
    return series(lambda n: S(n) ** s / (n * log(n + 1) ** s), 1, zeta(2) ** s, s) ** (1 / mpf(p))


def gamma_e1(q):
    s = mpf(q) / 2
    return series(lambda n: psi(1, n) ** s / (n * log(n + 1) ** s), 1) ** (1 / mpf(q))


def theta_general(seq, p):
    a = sorted((abs(mpf(x)) for x in seq), reverse=True)
    N = len(a)
    s = mpf(p) / 2
    S = [sum(x * x for x in a[:n]) for n in range(N + 1)]
    head = sum(S[n] ** s / (n * log(n + 1) ** s) for n in range(1, N + 1))
    tail = S[N] ** s * series(lambda n: 1 / (n * log(n + 1) ** s), N + 1, 1, s)
    return (head + tail) ** (1 / mpf(p))


def gamma_general(seq, q):
    a = sorted((abs(mpf(x)) for x in seq), reverse=True)
    N = len(a)
    A = sum(a)
    s = mpf(q) / 2
    dd = [sum(a[:j]) / j for j in range(1, N + 1)]
    T = [sum(x * x for x in dd[n - 1:]) + A * A * psi(1, N + 1) for n in range(1, N + 1)]
    head = sum(T[n - 1] ** s / (n * log(n + 1) ** s) for n in range(1, N + 1))
    tail = series(lambda n: (A * A * psi(1, n)) ** s / (n * log(n + 1) ** s), N + 1)
    return (head + tail) ** (1 / mpf(q))


if __name__ == "__main__":
    print("theta p=4 e1", theta_e1(4))
    print("theta p=3 e1", theta_e1(3))
    print("theta** p=4 e1", theta_e1_double_star(4))
    print("gamma q=1 e1", gamma_e1(1))
    print("gamma q=3/2 e1", gamma_e1(mpf(3) / 2))
    print("bochkarev p=4 e1", 1 / log(2) ** (mpf(1) / 4))
    s = [3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5]
    print("theta p=4 s", theta_general(s, 4))
    print("gamma q=1 s", gamma_general(s, 1))
    # optimal Y, q=1, u=ind(1), f=1_[0,1]: int_0^1 sqrt(t)/(sqrt(t)+sqrt(1-t)) dt
    print("optimalY q=1", quad(lambda t: sqrt(t) / (sqrt(t) + sqrt(1 - t)), [0, 1]))
    # Morrey, q=1, phi = 1_[0,2), f = 1_[0,1]: limit R -> 2
    print("morrey q=1", (mpf(2) / 3 + quad(lambda t: sqrt(2 - 1 / t), [1, 2])) / sqrt(2))
