"""Model kernels: Minkowski 3-space, the hyperbolic plane and space, de Sitter
and anti de Sitter space, together with the matrix groups acting on them.

Conventions used throughout the package:

* ``<v, w> = -v0 w0 + v1 w1 + v2 w2`` on R^{2,1}; the hyperbolic plane is the
  upper sheet of ``<x, x> = -1``.
* An ideal point is an angle ``theta``; its null ray is ``(1, cos, sin)``.
* The upper half-plane point ``z = w + ic`` corresponds to
  ``((w^2+c^2+1)/2c, (w^2+c^2-1)/2c, -w/c)``; the boundary angle ``theta``
  corresponds to ``-cot(theta/2)``.
* R^{3,1} carries ``-x0^2 + x1^2 + x2^2 + x3^2`` and the half-space point
  ``(w, c)`` corresponds to ``((|w|^2+c^2+1)/2c, (|w|^2+c^2-1)/2c,
  -Re w/c, -Im w/c)``.  The plane ``x3 = 0`` is the hyperbolic plane above.
"""
from __future__ import annotations

import numpy as np

from .errors import BadTangent, CoincidentEndpoints, NotHyperbolic, NullInput

ETA = np.diag([-1.0, 1.0, 1.0])
ETA4 = np.diag([-1.0, 1.0, 1.0, 1.0])
ID2 = np.eye(2)
# quarter turn about i in the upper half-plane
E_ROT = np.array([[0.0, -1.0], [1.0, 0.0]])
TWO_PI = 2.0 * np.pi


# ---------------------------------------------------------------------------
# Minkowski 3-space and the hyperbolic plane


def mink_form(u, v) -> float:
    u = np.asarray(u)
    v = np.asarray(v)
    return -u[..., 0] * v[..., 0] + u[..., 1] * v[..., 1] + u[..., 2] * v[..., 2]


def mink_norm(v) -> float:
    """Lorentzian length sqrt(|<v,v>|)."""
    return float(np.sqrt(abs(mink_form(v, v))))


def h2_point(v) -> np.ndarray:
    """Project a future timelike vector to the hyperboloid."""
    v = np.asarray(v, dtype=float)
    q = mink_form(v, v)
    if not q < 0 or v[0] <= 0:
        raise ValueError("not a future timelike vector")
    return v / np.sqrt(-q)


def h2_distance(x, y) -> float:
    # <x-y, x-y> = 4 sh^2(d/2) stays accurate for nearby points
    d = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
    return float(2 * np.arcsinh(0.5 * np.sqrt(max(mink_form(d, d), 0.0))))


def h2_from_polar(r, phi):
    """Point at distance r from (1,0,0) in direction phi."""
    return np.array([np.cosh(r), np.sinh(r) * np.cos(phi), np.sinh(r) * np.sin(phi)])


def ideal_point(theta) -> np.ndarray:
    return np.array([1.0, np.cos(theta), np.sin(theta)])


def normalize_angle(theta: float) -> float:
    t = float(np.mod(theta, TWO_PI))
    return 0.0 if t >= TWO_PI else t


def geodesic(theta_minus: float, theta_plus: float, tol: float = 1e-12) -> np.ndarray:
    """Unit normal of the geodesic oriented from theta_minus to theta_plus.

    The normal v is chosen so that (x-, x+, v) is a positive basis, that is
    det(rows x-, x+, v) > 0.
    """
    a = ideal_point(theta_minus)
    b = ideal_point(theta_plus)
    n = ETA @ np.cross(a, b)
    q = mink_form(n, n)
    if q < tol:
        raise CoincidentEndpoints(f"endpoints {theta_minus} and {theta_plus} coincide")
    n = n / np.sqrt(q)
    if np.linalg.det(np.array([a, b, n])) < 0:
        n = -n
    return n


def endpoints(normal) -> tuple[float, float]:
    """Ideal endpoints (theta_minus, theta_plus) of the oriented geodesic."""
    v = np.asarray(normal, dtype=float)
    R = np.hypot(v[1], v[2])
    if R == 0.0:
        raise NullInput("normal is not spacelike")
    phi = np.arctan2(v[2], v[1])
    d = np.arccos(np.clip(v[0] / R, -1.0, 1.0))
    t1 = normalize_angle(phi + d)
    t2 = normalize_angle(phi - d)
    if np.linalg.det(np.array([ideal_point(t1), ideal_point(t2), v])) > 0:
        return t1, t2
    return t2, t1


def geodesic_point(normal, t: float = 0.0) -> np.ndarray:
    """Arc-length parametrisation of the geodesic, t=0 at the point closest to (1,0,0),
    moving toward the positive endpoint."""
    m, e = geodesic_frame(normal)
    return np.cosh(t) * m + np.sinh(t) * e


def geodesic_frame(normal):
    """(m, e): foot point of (1,0,0) on the geodesic and the unit tangent there
    pointing toward the positive endpoint."""
    n = np.asarray(normal, dtype=float)
    m = project_to_geodesic(np.array([1.0, 0.0, 0.0]), n)
    _, tp = endpoints(n)
    r = ideal_point(tp)
    e = r / -mink_form(r, m) - m
    return m, e


def project_to_geodesic(x, normal) -> np.ndarray:
    """Closest point of the geodesic to x."""
    n = np.asarray(normal, dtype=float)
    m = np.asarray(x, dtype=float) - mink_form(x, n) * n
    return m / np.sqrt(-mink_form(m, m))


def boost(t: float, axis: int = 1) -> np.ndarray:
    """SO(2,1) boost mixing x0 with x_axis."""
    M = np.eye(3)
    c, s = np.cosh(t), np.sinh(t)
    M[0, 0] = M[axis, axis] = c
    M[0, axis] = M[axis, 0] = s
    return M


def rotation(phi: float) -> np.ndarray:
    M = np.eye(3)
    c, s = np.cos(phi), np.sin(phi)
    M[1:, 1:] = [[c, -s], [s, c]]
    return M


# ---------------------------------------------------------------------------
# upper half-plane and boundary


def uhp_to_h2(z: complex) -> np.ndarray:
    w, c = z.real, z.imag
    s = w * w + c * c
    return np.array([(s + 1) / (2 * c), (s - 1) / (2 * c), -w / c])


def h2_to_uhp(x) -> complex:
    c = 1.0 / (x[0] - x[1])
    return complex(-x[2] * c, c)


def angle_to_real(theta: float) -> float:
    """Boundary angle to the extended real line; theta = 0 maps to inf."""
    h = 0.5 * theta
    s = np.sin(h)
    if s == 0.0:
        return np.inf
    return -np.cos(h) / s


def angle_to_vec(theta: float) -> np.ndarray:
    """Homogeneous vector (a, b) with a/b the boundary point of theta."""
    h = 0.5 * theta
    return np.array([-np.cos(h), np.sin(h)])


def vec_to_angle(v) -> float:
    v = np.real_if_close(np.asarray(v))
    return normalize_angle(2.0 * np.arctan2(v[1], -v[0]))


def act_on_angle(A, theta: float) -> float:
    """Action of a real unimodular matrix on a boundary angle."""
    return vec_to_angle(np.asarray(A, dtype=float) @ angle_to_vec(theta))


def mobius(A, z):
    """Moebius action on the extended complex plane (inf allowed)."""
    a, b, c, d = A[0, 0], A[0, 1], A[1, 0], A[1, 1]
    if np.isinf(z):
        return a / c if c != 0 else complex(np.inf)
    den = c * z + d
    if den == 0:
        return complex(np.inf)
    return (a * z + b) / den


# ---------------------------------------------------------------------------
# sl(2,R) <-> R^{2,1}


def sl2_mink(X) -> np.ndarray:
    """Linear isometry (sl2, -det) -> (R^{2,1}, <,>).

    [[a, b+c], [b-c, -a]] maps to (c, b, a).
    """
    X = np.asarray(X)
    return np.array([(X[0, 1] - X[1, 0]) / 2, (X[0, 1] + X[1, 0]) / 2, X[0, 0]])


def mink_sl2(x) -> np.ndarray:
    x = np.asarray(x)
    return np.array([[x[2], x[1] + x[0]], [x[1] - x[0], -x[2]]])


def pi_rotation(p) -> np.ndarray:
    """The order-two rotation about p, as a matrix squaring to -Id.

    This is also the linear identification of R^{2,1} with traceless matrices
    used for anti de Sitter space.
    """
    return -mink_sl2(p)


def mink_to_ads(v) -> np.ndarray:
    return -mink_sl2(v)


def ads_to_mink(X) -> np.ndarray:
    return -sl2_mink(X)


def translation_generator(normal) -> np.ndarray:
    """Unit generator of the translation along the oriented geodesic."""
    return mink_sl2(normal)


def sl2_to_so21(A) -> np.ndarray:
    """Adjoint action of A in the basis where sl2_mink is the identity."""
    A = np.asarray(A, dtype=float)
    Ai = np.linalg.inv(A)
    M = np.empty((3, 3))
    for j in range(3):
        e = np.zeros(3)
        e[j] = 1.0
        M[:, j] = sl2_mink(A @ mink_sl2(e) @ Ai)
    return M


def so21_to_sl2(M) -> np.ndarray:
    """A unimodular lift of an element of SO+(2,1) (sign left arbitrary)."""
    M = np.asarray(M, dtype=float)
    # Ad(A) X = A X A^-1 is linear in X; solve A X_j - Y_j A = 0 for A
    rows = []
    for j in range(3):
        e = np.zeros(3)
        e[j] = 1.0
        X = mink_sl2(e)
        Y = mink_sl2(M[:, j])
        for r in range(2):
            for c in range(2):
                coeff = np.zeros(4)
                for k in range(2):
                    coeff[r * 2 + k] += X[k, c]
                    coeff[k * 2 + c] -= Y[r, k]
                rows.append(coeff)
    _, _, vt = np.linalg.svd(np.array(rows))
    A = vt[-1].reshape(2, 2)
    d = np.linalg.det(A)
    if d < 0:
        raise ValueError("matrix is not orientation preserving")
    return A / np.sqrt(d)


# ---------------------------------------------------------------------------
# matrix exponential and projective classes


def _sinhc(s):
    s = np.asarray(s, dtype=complex)
    small = np.abs(s) < 1e-4
    s2 = s * s
    safe = np.where(small, 1.0, s)
    return np.where(small, 1 + s2 / 6 + s2 * s2 / 120, np.sinh(safe) / safe)


def mat_exp(X) -> np.ndarray:
    """exp of a traceless 2x2 matrix via X^2 = -det(X) Id."""
    X = np.asarray(X)
    d = X[0, 0] * X[1, 1] - X[0, 1] * X[1, 0]
    s = np.sqrt(np.asarray(-d, dtype=complex))
    out = np.cosh(s) * np.eye(2) + _sinhc(s) * X
    if np.isrealobj(X):
        return out.real
    return out


def proj_normalize(A) -> np.ndarray:
    """Sign representative: the first entry of largest modulus has positive real part."""
    A = np.asarray(A)
    flat = A.ravel()
    mags = np.abs(flat)
    k = int(np.argmax(mags >= mags.max() * (1 - 1e-12)))
    return -A if flat[k].real < 0 else A.copy()


def proj_dist(A, B) -> float:
    A = np.asarray(A)
    B = np.asarray(B)
    return float(min(np.max(np.abs(A - B)), np.max(np.abs(A + B))))


def unimodular(A) -> np.ndarray:
    """Rescale so that det = 1 (complex square root if needed)."""
    A = np.asarray(A)
    d = np.linalg.det(A)
    if np.isrealobj(A) and d > 0:
        return A / np.sqrt(d)
    return A / np.sqrt(complex(d))


def mat_log_hyperbolic(A):
    """(ell, Y) with A = +-exp(ell Y / 2), Y a unit translation generator."""
    A = np.asarray(A, dtype=float)
    tr = np.trace(A)
    if abs(tr) <= 2:
        raise NotHyperbolic(f"trace {tr} is not hyperbolic")
    if tr < 0:
        A = -A
        tr = -tr
    ell = 2 * np.arccosh(tr / 2)
    Y = (A - (tr / 2) * ID2) / np.sinh(ell / 2)
    return ell, Y


# ---------------------------------------------------------------------------
# hyperbolic 3-space, de Sitter 3-space


def mink4_form(u, v):
    u = np.asarray(u)
    v = np.asarray(v)
    return -u[..., 0] * v[..., 0] + u[..., 1] * v[..., 1] + u[..., 2] * v[..., 2] + u[..., 3] * v[..., 3]


def herm(x) -> np.ndarray:
    """Hermitian matrix of a 4-vector; -det equals the form."""
    x0, x1, x2, x3 = x
    return np.array([[x0 + x1, -x2 + 1j * x3], [-x2 - 1j * x3, x0 - x1]])


def unherm(H) -> np.ndarray:
    return np.array([
        0.5 * (H[0, 0] + H[1, 1]).real,
        0.5 * (H[0, 0] - H[1, 1]).real,
        -H[0, 1].real,
        H[0, 1].imag,
    ])


def sl2c_to_so31(A) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    Ah = A.conj().T
    M = np.empty((4, 4))
    for j in range(4):
        e = np.zeros(4)
        e[j] = 1.0
        M[:, j] = unherm(A @ herm(e) @ Ah)
    return M


def h2_to_h3(x) -> np.ndarray:
    return np.array([x[0], x[1], x[2], 0.0])


def halfspace_to_h3(w: complex, c: float) -> np.ndarray:
    s = abs(w) ** 2 + c * c
    return np.array([(s + 1) / (2 * c), (s - 1) / (2 * c), -w.real / c, w.imag / c])


def h3_to_halfspace(x):
    c = 1.0 / (x[0] - x[1])
    return complex(-x[2] * c, x[3] * c), c


def h3_distance(x, y) -> float:
    d = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
    return float(2 * np.arcsinh(0.5 * np.sqrt(max(mink4_form(d, d), 0.0))))


def h3_to_ball(x) -> np.ndarray:
    return np.asarray(x[1:]) / (1.0 + x[0])


def boundary_to_sphere(w) -> np.ndarray:
    """Point of the sphere at infinity (ball model) for w in the extended plane."""
    if np.isinf(w):
        return np.array([1.0, 0.0, 0.0])
    w = complex(w)
    s = abs(w) ** 2
    return np.array([s - 1.0, -2 * w.real, 2 * w.imag]) / (s + 1.0)


def sphere_to_boundary(y):
    y = np.asarray(y, dtype=float)
    if abs(1 - y[0]) < 1e-15:
        return complex(np.inf)
    return complex(-y[1], y[2]) / (1 - y[0])


def klein(x) -> np.ndarray:
    """Affine chart x0 = 1 of projective 3-space."""
    return np.asarray(x[1:]) / x[0]


def ds_normalize(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    k = int(np.argmax(np.abs(v)))
    return -v if v[k] < 0 else v.copy()


# ---------------------------------------------------------------------------
# anti de Sitter space as PSL(2,R)


def ads_form(X, Y) -> float:
    """Polarisation of -det: <X, Y> = -tr(X adj Y) / 2."""
    X = np.asarray(X)
    Y = np.asarray(Y)
    return -0.5 * (X[..., 0, 0] * Y[..., 1, 1] + X[..., 1, 1] * Y[..., 0, 0]
                   - X[..., 0, 1] * Y[..., 1, 0] - X[..., 1, 0] * Y[..., 0, 1])


def ads_act(pair, X) -> np.ndarray:
    A, B = pair
    return A @ X @ np.linalg.inv(B)


def boundary_embed(theta_left: float, theta_right: float) -> np.ndarray:
    """Rank-one matrix v (x) E w for the boundary point (theta_left, theta_right)."""
    v = angle_to_vec(theta_left)
    w = angle_to_vec(theta_right)
    return np.outer(v, E_ROT @ w)


def boundary_unembed(M) -> tuple[float, float]:
    M = np.asarray(M, dtype=float)
    u, s, vt = np.linalg.svd(M)
    v = u[:, 0]
    Ew = vt[0]
    w = E_ROT.T @ Ew
    return vec_to_angle(v), vec_to_angle(w)


def rotation_about(x) -> tuple[np.ndarray, np.ndarray]:
    """Isometry pair fixing the dual geodesic through the hyperbolic element x."""
    x = np.asarray(x, dtype=float)
    tr = np.trace(x)
    if abs(tr) < 2 - 1e-12:
        raise NotHyperbolic(f"trace {tr} is elliptic")
    return x.copy(), np.linalg.inv(x)


def plane_angle(x1, x2) -> float:
    """Angle between the planes dual to two points on a common dual line."""
    t = abs(np.trace(np.asarray(x1) @ np.linalg.inv(x2))) / 2
    return float(np.arccosh(max(t, 1.0)))


def dual_line_point(t: float) -> np.ndarray:
    """Point of the line dual to the diagonal subgroup."""
    return np.array([[0.0, np.exp(t)], [-np.exp(-t), 0.0]])


def dual_endpoints(x_minus, x_plus):
    """Product-coordinate endpoints of the dual geodesic.

    Endpoints (a, b) and (c, d) of a spacelike geodesic have dual endpoints
    (a, d) and (c, b).
    """
    (a, b), (c, d) = x_minus, x_plus
    if abs(np.sin(0.5 * (a - c))) < 1e-14 or abs(np.sin(0.5 * (b - d))) < 1e-14:
        raise NullInput("degenerate geodesic")
    return (a, d), (c, b)


def ads_timelike_distance(X, Y) -> float:
    """Timelike distance in [0, pi] between lifts with |<X,Y>| <= 1."""
    return float(np.arccos(np.clip(-ads_form(X, Y), -1.0, 1.0)))


# ---------------------------------------------------------------------------
# exponential maps of de Sitter and anti de Sitter space


def model_exp(x, v, kind: str, t: float):
    """Geodesic from x with initial velocity v, evaluated at time t.

    kind is ``"deSitter"`` (4-vectors) or ``"antiDeSitter"`` (2x2 matrices).
    """
    if kind == "deSitter":
        x = np.asarray(x, dtype=float)
        v = np.asarray(v, dtype=float)
        form = mink4_form
        point_sign = 1.0
    elif kind == "antiDeSitter":
        x = np.asarray(x, dtype=float)
        v = np.asarray(v, dtype=float)
        form = ads_form
        point_sign = -1.0
    else:
        raise ValueError(f"unknown kind {kind!r}")
    if abs(form(x, v)) > 1e-9:
        raise BadTangent("tangent vector is not orthogonal to the point")
    q = float(form(v, v))
    if abs(q) < 1e-15:
        return x + t * v
    n = np.sqrt(abs(q))
    u = v / n
    # directions of the same type as the point give circles
    if np.sign(q) == point_sign:
        return np.cos(n * t) * x + np.sin(n * t) * u
    return np.cosh(n * t) * x + np.sinh(n * t) * u
