# Independent evaluation of the regime III constants for u = ind(1),
# v_* = 1 on [0,1] and t afterwards, p = 4, q = 1.
from mpmath import mp, mpf, quad, sqrt, inf

mp.dps = 30

def g(t):
    if t >= 1:
        return mpf(0)
    return t / (t + sqrt(t) * sqrt(1 - t)) / sqrt(t)

def G(t):
    return quad(g, [t, 1]) if t < 1 else mpf(0)

def vstar(t):
    return mpf(1) if t <= 1 else t

def V(t):
    return t if t <= 1 else 1 + (t**5 - 1) / 5

def h(t):
    return vstar(t)**4 * t**2 / V(t)**2

def H(x):
    pts = [x, 1, inf] if x < 1 else [x, inf]
    return quad(h, pts)

def W(x):
    return x if x <= 1 else 1 + 3 * (1 - x**(-mpf(1) / 3))

c6 = quad(lambda t: g(t) * G(t)**(mpf(1) / 3) * H(1 / t)**(mpf(1) / 3), [0, 0.5, 1]) ** (mpf(3) / 4)
c4 = quad(lambda s: s**(mpf(1) / 3) * W(1 / s), [0, 1]) ** (mpf(3) / 4)
print("C4", c4)
print("C6", c6)
