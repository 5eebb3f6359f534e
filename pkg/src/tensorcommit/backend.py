"""Bilinear-group backends.

Two interchangeable realizations of the same contract:

* :class:`TransparentBackend` — a test oracle where a group element *is* its
  discrete log modulo a 127-bit prime.  Every pairing check becomes an exact
  integer identity, so algebraic properties of the commitment pipeline are
  desk-checkable.
* :class:`PairingBackend` — a real symmetric pairing on the supersingular
  curve y^2 = x^3 + x over F_q with q = c*p - 1 and q = 3 (mod 4).  The
  modified Tate pairing e(S, T) = t(S, phi(T)) with the distortion map
  phi(x, y) = (-x, i*y) is bilinear, symmetric and non-degenerate on the
  order-p subgroup.

Group elements are raw values (ints for the transparent backend, affine
(x, y) tuples or ``None`` for the point at infinity on the curve); target
elements are ints respectively F_q2 pairs.  Backends are stateless and safe
to share across threads.
"""

from __future__ import annotations

import hashlib


class BackendError(RuntimeError):
    """Operation not supported by the active backend."""


# ---------------------------------------------------------------------------
# transparent backend
# ---------------------------------------------------------------------------

_TRANSPARENT_ORDER = (1 << 127) - 1  # Mersenne prime M127


class TransparentBackend:
    """Group emulated in the exponent: element g^a is stored as the int a."""

    name = "transparent"

    def __init__(self):
        self.order = _TRANSPARENT_ORDER
        self.g = 1
        self.identity = 0
        self.target_identity = 0
        self.scalar_bytes = 16
        self.elem_bytes = 16

    # group ops ------------------------------------------------------------
    def mul(self, a: int, b: int) -> int:
        return (a + b) % self.order

    def exp(self, base: int, k: int) -> int:
        return (base * k) % self.order

    def pair(self, a: int, b: int) -> int:
        return (a * b) % self.order

    def target_mul(self, x: int, y: int) -> int:
        return (x + y) % self.order

    def transparent_pair(self, a_exponent: int, b_exponent: int) -> int:
        """Pair two elements given directly by their discrete logs."""
        return (a_exponent * b_exponent) % self.order

    def validate_elem(self, e) -> bool:
        return isinstance(e, int) and 0 <= e < self.order

    # encoding ---------------------------------------------------------------
    def encode_elem(self, e: int) -> bytes:
        return e.to_bytes(self.elem_bytes, "little")

    def decode_elem(self, raw: bytes) -> int:
        if len(raw) != self.elem_bytes:
            raise ValueError("bad element length")
        v = int.from_bytes(raw, "little")
        if v >= self.order:
            raise ValueError("element out of range")
        return v

    def encode_scalar(self, s: int) -> bytes:
        return (s % self.order).to_bytes(self.scalar_bytes, "little")

    def decode_scalar(self, raw: bytes) -> int:
        if len(raw) != self.scalar_bytes:
            raise ValueError("bad scalar length")
        v = int.from_bytes(raw, "little")
        if v >= self.order:
            raise ValueError("scalar out of range")
        return v

    def hash_to_scalar(self, data: bytes, tag: bytes = b"") -> int:
        h = hashlib.sha256(b"tc/h2f/" + tag + b"/" + data).digest()
        return int.from_bytes(h, "little") % self.order


# ---------------------------------------------------------------------------
# production backend: supersingular curve, embedding degree 2
# ---------------------------------------------------------------------------

# subgroup order p (prime, Hamming weight 3), cofactor c, curve prime q = c*p - 1
_P_ORDER = (1 << 161) + (1 << 24) + 1
_COFACTOR = 120
_Q = _COFACTOR * _P_ORDER - 1
_GX = 251143519239308603259454152668007805633320126757058
_GY = 36213243983195114554803697526372907779067409015054
_PBITS = bin(_P_ORDER)[3:]  # loop bits below the MSB


def _jac_double(X, Y, Z, q):
    XX = X * X % q
    YY = Y * Y % q
    YYYY = YY * YY % q
    ZZ = Z * Z % q
    t = X + YY
    S = 2 * (t * t - XX - YYYY) % q
    M = (3 * XX + ZZ * ZZ) % q  # curve coefficient a = 1
    X3 = (M * M - 2 * S) % q
    Y3 = (M * (S - X3) - 8 * YYYY) % q
    t = Y + Z
    Z3 = (t * t - YY - ZZ) % q
    return X3, Y3, Z3


def _jac_add_affine(X1, Y1, Z1, xp, yp, q):
    """Mixed Jacobian+affine addition; returns None on a vertical (R = -P)."""
    ZZ = Z1 * Z1 % q
    U2 = xp * ZZ % q
    S2 = yp * Z1 % q * ZZ % q
    H = (U2 - X1) % q
    r2 = 2 * (S2 - Y1) % q
    if H == 0:
        if r2 == 0:
            X3, Y3, Z3 = _jac_double(X1, Y1, Z1, q)
            return X3, Y3, Z3
        return None
    HH = H * H % q
    I = 4 * HH % q
    J = H * I % q
    V = X1 * I % q
    X3 = (r2 * r2 - J - 2 * V) % q
    Y3 = (r2 * (V - X3) - 2 * Y1 * J) % q
    t = Z1 + H
    Z3 = (t * t - ZZ - HH) % q
    return X3, Y3, Z3


def _jac_to_affine(P, q):
    if P is None:
        return None
    X, Y, Z = P
    zi = pow(Z, -1, q)
    zi2 = zi * zi % q
    return (X * zi2 % q, Y * zi2 % q * zi % q)


def _f2_mul(u, v, q):
    a, b = u
    c, d = v
    return ((a * c - b * d) % q, (a * d + b * c) % q)


def _f2_sq(u, q):
    a, b = u
    return ((a - b) * (a + b) % q, 2 * a * b % q)


class PairingBackend:
    """Symmetric Tate pairing on E: y^2 = x^3 + x over F_q, subgroup order p."""

    name = "production"

    def __init__(self):
        self.order = _P_ORDER
        self.q = _Q
        self.g = (_GX, _GY)
        self.identity = None
        self.target_identity = (1, 0)
        self.scalar_bytes = 21
        self.coord_bytes = 21
        self.elem_bytes = 1 + 2 * self.coord_bytes

    # group ops ------------------------------------------------------------
    def mul(self, a, b):
        if a is None:
            return b
        if b is None:
            return a
        q = self.q
        x1, y1 = a
        x2, y2 = b
        if x1 == x2:
            if (y1 + y2) % q == 0:
                return None
            lam = (3 * x1 * x1 + 1) * pow(2 * y1, -1, q) % q
        else:
            lam = (y2 - y1) * pow(x2 - x1, -1, q) % q
        x3 = (lam * lam - x1 - x2) % q
        return (x3, (lam * (x1 - x3) - y1) % q)

    def exp(self, base, k: int):
        k %= self.order
        if base is None or k == 0:
            return None
        q = self.q
        xp, yp = base
        R = None
        for bit in bin(k)[2:]:
            if R is not None:
                R = _jac_double(*R, q)
            if bit == "1":
                if R is None:
                    R = (xp, yp, 1)
                else:
                    R = _jac_add_affine(*R, xp, yp, q)
        return _jac_to_affine(R, q)

    def pair(self, S, T):
        """Modified Tate pairing e(S, T) = t_p(S, phi(T)), symmetric on <g>.

        Miller loop in Jacobian coordinates with denominator elimination
        (embedding degree 2 kills every F_q-valued factor in the final
        exponentiation, which collapses to z -> (z^(q-1))^c).
        """
        if S is None or T is None:
            return (1, 0)
        q = self.q
        xq = (-T[0]) % q  # phi(T) = (-x_T, i*y_T)
        yq = T[1]
        xp, yp = S
        fa, fb = 1, 0
        X, Y, Z = xp, yp, 1
        for bit in _PBITS:
            XX = X * X % q
            YY = Y * Y % q
            YYYY = YY * YY % q
            ZZ = Z * Z % q
            t = X + YY
            Sd = 2 * (t * t - XX - YYYY) % q
            M = (3 * XX + ZZ * ZZ) % q
            # tangent line at R evaluated at (xq, i*yq), scaled by 2yZ^6
            lr = (-2 * YY - M * (xq * ZZ - X)) % q
            li = 2 * Y * Z % q * ZZ % q * yq % q
            # f <- f^2 * line
            fa, fb = (fa - fb) * (fa + fb) % q, 2 * fa * fb % q
            fa, fb = (fa * lr - fb * li) % q, (fa * li + fb * lr) % q
            X3 = (M * M - 2 * Sd) % q
            Y3 = (M * (Sd - X3) - 8 * YYYY) % q
            t = Y + Z
            X, Y, Z = X3, Y3, (t * t - YY - ZZ) % q
            if bit == "1":
                ZZ = Z * Z % q
                U2 = xp * ZZ % q
                S2 = yp * Z % q * ZZ % q
                H = (U2 - X) % q
                num = (S2 - Y) % q
                if H == 0 and num == 0:
                    raise BackendError("pairing argument of unexpected order")
                den = H * Z % q
                # chord through R and S, scaled by den; vertical lines drop out
                if H != 0:
                    lr = (-den * yp - num * (xq - xp)) % q
                    li = den * yq % q
                    fa, fb = (fa * lr - fb * li) % q, (fa * li + fb * lr) % q
                    HH = H * H % q
                    I = 4 * HH % q
                    J = H * I % q
                    V = X * I % q
                    r2 = 2 * num % q
                    X3 = (r2 * r2 - J - 2 * V) % q
                    Y3 = (r2 * (V - X3) - 2 * Y * J) % q
                    t = Z + H
                    X, Y, Z = X3, Y3, (t * t - ZZ - HH) % q
                else:
                    # R = -S: vertical line is F_q valued, result hits infinity
                    X, Y, Z = 0, 1, 0
        # final exponentiation: f^((q^2-1)/p) = (conj(f)/f)^c
        norm = (fa * fa + fb * fb) % q
        ni = pow(norm, -1, q)
        inva, invb = fa * ni % q, (-fb) * ni % q
        ga, gb = (fa * inva + fb * invb) % q, (fa * invb - fb * inva) % q
        out = (1, 0)
        base = (ga, gb)
        e = _COFACTOR
        while e:
            if e & 1:
                out = _f2_mul(out, base, q)
            base = _f2_sq(base, q)
            e >>= 1
        return out

    def target_mul(self, x, y):
        return _f2_mul(x, y, self.q)

    def transparent_pair(self, a_exponent: int, b_exponent: int):
        raise BackendError("discrete logs are not available on the production backend")

    def validate_elem(self, e) -> bool:
        if e is None:
            return True
        if not (isinstance(e, tuple) and len(e) == 2):
            return False
        x, y = e
        q = self.q
        return 0 <= x < q and 0 <= y < q and (y * y - (x * x * x + x)) % q == 0

    # encoding ---------------------------------------------------------------
    def encode_elem(self, e) -> bytes:
        if e is None:
            return b"\x00" * self.elem_bytes
        x, y = e
        return (
            b"\x04"
            + x.to_bytes(self.coord_bytes, "little")
            + y.to_bytes(self.coord_bytes, "little")
        )

    def decode_elem(self, raw: bytes):
        if len(raw) != self.elem_bytes:
            raise ValueError("bad element length")
        if raw[0] == 0:
            if any(raw[1:]):
                raise ValueError("bad infinity encoding")
            return None
        if raw[0] != 4:
            raise ValueError("bad point flag")
        x = int.from_bytes(raw[1 : 1 + self.coord_bytes], "little")
        y = int.from_bytes(raw[1 + self.coord_bytes :], "little")
        pt = (x, y)
        if not self.validate_elem(pt):
            raise ValueError("point not on curve")
        return pt

    def encode_scalar(self, s: int) -> bytes:
        return (s % self.order).to_bytes(self.scalar_bytes, "little")

    def decode_scalar(self, raw: bytes) -> int:
        if len(raw) != self.scalar_bytes:
            raise ValueError("bad scalar length")
        v = int.from_bytes(raw, "little")
        if v >= self.order:
            raise ValueError("scalar out of range")
        return v

    def hash_to_scalar(self, data: bytes, tag: bytes = b"") -> int:
        h = hashlib.sha256(b"tc/h2f/" + tag + b"/" + data).digest()
        return int.from_bytes(h, "little") % self.order


_BACKENDS = {"transparent": TransparentBackend, "production": PairingBackend}


def make_backend(name: str):
    """Instantiate a backend by name ("transparent" or "production")."""
    try:
        return _BACKENDS[name]()
    except KeyError:
        raise ValueError(f"unknown backend {name!r}") from None
