# Arbitrary-precision reference values for the frozen expectations in the Rust tests.
from mpmath import mp, ellipk, ellipe, findroot, mpf, pi, sqrt, quad, diff, cos, sin, cosh, inf
mp.dps = 40
K = lambda k: ellipk(k**2)
E = lambda k: ellipe(k**2)

def quarter_len(c):
    e = c - 1
    return c*(E(1/c) - e*(c+1)/c**2*K(1/c))
def F(c, y):
    e = c - 1
    return (y+e)*E(y/(y+e)) - quarter_len(c)
def solve(c):
    return findroot(lambda y: F(c, y), 1)
def w_nod(c): return 2*pi*(1+c)*E(2*sqrt(c)/(1+c))
def w_und(y, e): return 2*pi*(1 + y/(y+e))*E(2*sqrt(y*(y+e))/(2*y+e))
def w_total(c):
    y = solve(c); return w_nod(c) + w_und(y, c-1)

print("K(0.5)", mp.nstr(K(mpf('0.5')), 20), "E(0.5)", mp.nstr(E(mpf('0.5')), 20))
print("K(0.3)", mp.nstr(K(mpf('0.3')), 20), "E(0.9)", mp.nstr(E(mpf('0.9')), 20))
for cs in ['1.0005', '1.001', '1.005', '1.01', '1.05', '1.1', '1.2']:
    c = mpf(cs); y = solve(c); e = c - 1
    yp = diff(solve, c)
    dw = diff(w_total, c)
    print(cs, "y", mp.nstr(y, 17), "wnod", mp.nstr(w_nod(c), 17), "wund", mp.nstr(w_und(y, e), 17),
          "dwdc", mp.nstr(dw, 12), "yprime", mp.nstr(yp, 12), "Lq", mp.nstr(quarter_len(c), 17))

def und_area(a, b):
    c = sqrt(a*a - b*b)
    return 2*pi*quad(lambda t: sqrt(a*a*b*b/(a+c*cos(t))**2 * b*b*(a-c*cos(t))/(a+c*cos(t))), [0, pi, 2*pi])
def und_len(a, b):
    c = sqrt(a*a - b*b)
    return quad(lambda x: sqrt(a*a - c*c*cos(x)**2), [0, pi, 2*pi])
def nod_area(a, b):
    c = sqrt(a*a + b*b)
    def s(t, sg):
        Ep = a*a*b*b/(c*cosh(t) + sg*a)**2
        Gp = b*b*(c*cosh(t) - sg*a)/(c*cosh(t) + sg*a)
        return sqrt(Ep*Gp)
    return 2*pi*quad(lambda t: s(t, 1) + s(t, -1), [-inf, 0, inf])
def nod_len(a, b):
    n = a/b
    return 4*a*n*quad(lambda x: sin(x)**2/sqrt(1 + n*n*sin(x)**2), [0, pi/2])
for (a, b) in [(1, mpf('0.5')), (1, mpf('0.9')), (2, mpf('0.3'))]:
    print("und", a, b, "area", mp.nstr(und_area(a, b), 17), "len", mp.nstr(und_len(a, b), 17))
for (a, b) in [(1, 1), (1, sqrt(3)), (mpf('0.5'), 2)]:
    print("nod", a, b, "area", mp.nstr(nod_area(a, b), 17), "len", mp.nstr(nod_len(a, b), 17))

# Torus volume: pi * closed integral of f^2 dg, outer nodoid traversed upward, inner unduloid downward.
def torus_volume(c):
    y = solve(c); e = c - 1
    a_u = y + e; c_u = y; b_u = sqrt(a_u**2 - c_u**2)
    def und(t):
        P = a_u - c_u*cos(t); Q = a_u + c_u*cos(t); D = sqrt(P*Q)
        f = b_u*P/D; dg = a_u*b_u**2/(Q*D)
        return f*f*dg
    an = mpf(1); cn = c; bn = sqrt(cn*cn - 1)
    def nod(t, sg):
        P = cn - sg*an*cos(t); Q = cn + sg*an*cos(t); W = sqrt(P*Q)
        f = bn*P/W; dg = sg*an*bn**2*cos(t)/(W*Q)
        return f*f*dg
    v_und = pi*quad(und, [0, pi, 2*pi])
    v_nod = pi*(quad(lambda t: nod(t, 1), [-pi/2, 0, pi/2]) + quad(lambda t: nod(t, -1), [-pi/2, 0, pi/2]))
    return -(v_und + v_nod)
for cs in ['1.001', '1.05', '1.1']:
    c = mpf(cs)
    y = solve(c); e = c - 1; a = y + e
    area = 8*pi*(1+c)*E(2*sqrt(c)/(1+c)) + 8*pi*a*(a+y)*E(2*sqrt(a*y)/(a+y))
    v = torus_volume(c)
    print("torus", cs, "area", mp.nstr(area, 17), "volume", mp.nstr(v, 17), "iso", mp.nstr(area/v**(mpf(2)/3), 17))
for ex in [4, 6]:
    e = mpf(10)**(-ex); c = 1 + e; y = solve(c)
    r = (e*K(1/c) + e*K(y/(y+e)))/(1 - 1/(y+e)**2)
    print("ratio", ex, mp.nstr(r, 12), "W", mp.nstr(w_total(c), 20), "y", mp.nstr(y, 17), "Lq", mp.nstr(quarter_len(c), 17))
