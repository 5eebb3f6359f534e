"""Dense multivariate polynomials in lexicographic coefficient layout.

A polynomial with per-axis degree bounds ``shape = (d_1, ..., d_m)`` stores
its ``prod(d_j)`` coefficients flat, with the *last* axis varying fastest:
``coeffs[lex_index(i, shape)]`` is the coefficient of ``X_1^i_1 ... X_m^i_m``.

Everything here is generic over a scalar domain (see
:mod:`tensorcommit.field`): commitments use exact prime-field arithmetic,
the runtime benchmarks reuse the identical code over float64.

Four interpolation routes are provided on tensor grids — Lagrange-basis
accumulation, Newton divided differences, barycentric evaluation, and
forward-difference (uniform grids only) evaluation.  They construct or
evaluate the same unique interpolant and cross-check each other in tests.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from itertools import product as _iterproduct

_MAX_COEFFS = 1 << 26


def check_shape(shape) -> int:
    """Validate degree bounds; returns the flat coefficient count."""
    if len(shape) == 0:
        raise ValueError("shape needs at least one axis")
    size = 1
    for d in shape:
        if d < 1:
            raise ValueError(f"axis degree bound must be >= 1, got {d}")
        size *= d
    if size > _MAX_COEFFS:
        raise ValueError(f"coefficient array of {size} entries exceeds limit")
    return size


def lex_strides(shape):
    """Per-axis strides of the lexicographic layout (last axis stride 1)."""
    m = len(shape)
    strides = [1] * m
    for j in range(m - 2, -1, -1):
        strides[j] = strides[j + 1] * shape[j + 1]
    return tuple(strides)


def lex_index(idx, shape) -> int:
    """Flat offset of a multi-index; bijective onto [0, prod(shape))."""
    if len(idx) != len(shape):
        raise ValueError("index arity does not match shape")
    off = 0
    for i, d in zip(idx, shape):
        if not 0 <= i < d:
            raise IndexError(f"index {idx} out of bounds for shape {shape}")
        off = off * d + i
    return off


def iter_indices(shape):
    """All multi-indices of a shape in lexicographic (flat) order."""
    return _iterproduct(*(range(d) for d in shape))


@dataclass(frozen=True)
class MultiPoly:
    """Dense polynomial: degree bounds plus flat lex-ordered coefficients."""

    shape: tuple
    coeffs: tuple

    def __post_init__(self):
        size = check_shape(self.shape)
        if len(self.coeffs) != size:
            raise ValueError(
                f"expected {size} coefficients for shape {self.shape}, "
                f"got {len(self.coeffs)}"
            )

    @property
    def arity(self) -> int:
        return len(self.shape)

    def coeff(self, idx):
        return self.coeffs[lex_index(idx, self.shape)]


def constant_poly(dom, shape, value) -> MultiPoly:
    size = check_shape(shape)
    coeffs = [dom.zero] * size
    coeffs[0] = value
    return MultiPoly(tuple(shape), tuple(coeffs))


@dataclass(frozen=True)
class Grid:
    """Per-axis node lists; nodes must be pairwise distinct within an axis."""

    axes: tuple

    def __post_init__(self):
        if len(self.axes) == 0:
            raise ValueError("grid needs at least one axis")
        for nodes in self.axes:
            if len(nodes) != len(set(nodes)):
                raise ValueError("repeated node on a grid axis")

    @property
    def shape(self) -> tuple:
        return tuple(len(nodes) for nodes in self.axes)

    def point(self, idx) -> tuple:
        """Grid point at a multi-index."""
        return tuple(self.axes[j][i] for j, i in enumerate(idx))

    def axis_spacing(self, dom, j):
        """Common spacing of axis j, or None if the axis is not uniform."""
        nodes = self.axes[j]
        if len(nodes) < 2:
            return dom.one
        h = dom.sub(nodes[1], nodes[0])
        for r in range(2, len(nodes)):
            if dom.sub(nodes[r], nodes[r - 1]) != h:
                return None
        return h


def default_grid(dom, shape) -> Grid:
    """The canonical evaluation domain: axis j uses nodes 1..d_j."""
    check_shape(shape)
    return Grid(tuple(tuple(dom.from_int(r + 1) for r in range(d)) for d in shape))


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def evaluate(dom, f: MultiPoly, point):
    """Horner evaluation of the monomial form at a point of matching arity."""
    if len(point) != f.arity:
        raise ValueError("evaluation point arity does not match polynomial")
    return _horner(dom, f.coeffs, f.shape, 0, point)


def _horner(dom, coeffs, shape, axis, point):
    d = shape[axis]
    if axis == len(shape) - 1:
        acc = coeffs[-1] if d else dom.zero
        for k in range(d - 2, -1, -1):
            acc = dom.add(dom.mul(acc, point[axis]), coeffs[k])
        return acc
    block = 1
    for t in shape[axis + 1 :]:
        block *= t
    acc = _horner(dom, coeffs[(d - 1) * block : d * block], shape, axis + 1, point)
    for k in range(d - 2, -1, -1):
        part = _horner(dom, coeffs[k * block : (k + 1) * block], shape, axis + 1, point)
        acc = dom.add(dom.mul(acc, point[axis]), part)
    return acc


# ---------------------------------------------------------------------------
# per-axis fiber transforms
# ---------------------------------------------------------------------------

def _transform_axis(dom, flat, shape, axis, fn):
    """Apply fn to every 1-D fiber along `axis`; returns a new flat list."""
    strides = lex_strides(shape)
    d = shape[axis]
    step = strides[axis]
    out = list(flat)
    outer = 1
    for j in range(axis):
        outer *= shape[j]
    inner = step
    block = d * step
    for o in range(outer):
        base_o = o * block
        for i in range(inner):
            base = base_o + i
            fiber = out[base : base + block : step]
            res = fn(fiber)
            out[base : base + block : step] = res
    return out


# ---------------------------------------------------------------------------
# Lagrange interpolation (basis-accumulation route)
# ---------------------------------------------------------------------------

def _lagrange_1d(dom, nodes):
    """Returns fn mapping samples on `nodes` to monomial coefficients."""
    d = len(nodes)
    # master polynomial prod (X - z_r), degree d
    master = [dom.one]
    for z in nodes:
        nxt = [dom.zero] * (len(master) + 1)
        for k, c in enumerate(master):
            nxt[k + 1] = dom.add(nxt[k + 1], c)
            nxt[k] = dom.sub(nxt[k], dom.mul(c, z))
        master = nxt
    # basis_l = master / (X - z_l) scaled by 1 / prod_{r != l}(z_l - z_r)
    bases = []
    for l in range(d):
        z = nodes[l]
        q = [dom.zero] * d
        carry = master[d]
        for k in range(d - 1, -1, -1):
            q[k] = carry
            carry = dom.add(master[k], dom.mul(carry, z))
        w = dom.one
        for r in range(d):
            if r != l:
                w = dom.mul(w, dom.sub(z, nodes[r]))
        winv = dom.inv(w)
        bases.append([dom.mul(c, winv) for c in q])

    def fn(samples):
        coeffs = [dom.zero] * d
        for l, v in enumerate(samples):
            if dom.is_zero(v):
                continue
            b = bases[l]
            for k in range(d):
                coeffs[k] = dom.add(coeffs[k], dom.mul(v, b[k]))
        return coeffs

    return fn


def interpolate_lagrange(dom, values, grid: Grid) -> MultiPoly:
    """Unique interpolant with per-axis degree < d_j matching values on grid.

    Tensor-product construction: each axis is converted from samples to
    monomial coefficients independently via precomputed Lagrange bases.
    """
    shape = grid.shape
    size = check_shape(shape)
    values = list(values)
    if len(values) != size:
        raise ValueError("tensor size does not match grid shape")
    flat = values
    for j in range(len(shape)):
        flat = _transform_axis(dom, flat, shape, j, _lagrange_1d(dom, grid.axes[j]))
    return MultiPoly(shape, tuple(flat))


# ---------------------------------------------------------------------------
# Newton interpolation
# ---------------------------------------------------------------------------

def _divided_differences_1d(dom, nodes):
    d = len(nodes)

    def fn(samples):
        a = list(samples)
        for k in range(1, d):
            for i in range(d - 1, k - 1, -1):
                a[i] = dom.div(dom.sub(a[i], a[i - 1]), dom.sub(nodes[i], nodes[i - k]))
        return a

    return fn


def newton_coefficients(dom, values, grid: Grid):
    """Tensor-product divided differences (Newton-basis coefficients)."""
    shape = grid.shape
    size = check_shape(shape)
    flat = list(values)
    if len(flat) != size:
        raise ValueError("tensor size does not match grid shape")
    for j in range(len(shape)):
        flat = _transform_axis(dom, flat, shape, j, _divided_differences_1d(dom, grid.axes[j]))
    return flat


def _newton_to_monomial_1d(dom, nodes):
    d = len(nodes)

    def fn(newton):
        # Horner over the nested Newton form: a_0 + (X - z_0)(a_1 + (X - z_1)(...))
        coeffs = [dom.zero] * d
        coeffs[0] = newton[d - 1]
        deg = 0
        for i in range(d - 2, -1, -1):
            z = nodes[i]
            for k in range(deg + 1, 0, -1):
                coeffs[k] = dom.sub(coeffs[k - 1], dom.mul(z, coeffs[k]))
            coeffs[0] = dom.mul(dom.neg(z), coeffs[0])
            deg += 1
            coeffs[0] = dom.add(coeffs[0], newton[i])
        return coeffs

    return fn


def newton_interpolate(dom, values, grid: Grid):
    """Newton route: returns (divided-difference coefficients, monomial form)."""
    newton = newton_coefficients(dom, values, grid)
    shape = grid.shape
    flat = list(newton)
    for j in range(len(shape)):
        flat = _transform_axis(dom, flat, shape, j, _newton_to_monomial_1d(dom, grid.axes[j]))
    return newton, MultiPoly(shape, tuple(flat))


# ---------------------------------------------------------------------------
# barycentric evaluation
# ---------------------------------------------------------------------------

def barycentric_weights(dom, nodes):
    """1-D weights 1 / prod_{r != l}(z_l - z_r)."""
    d = len(nodes)
    ws = []
    for l in range(d):
        w = dom.one
        for r in range(d):
            if r != l:
                w = dom.mul(w, dom.sub(nodes[l], nodes[r]))
        ws.append(dom.inv(w))
    return ws


def _axis_factors(dom, nodes, weights, x):
    """Normalized per-node factors for one axis; exact-node case collapses."""
    d = len(nodes)
    for l in range(d):
        if x == nodes[l]:
            out = [dom.zero] * d
            out[l] = dom.one
            return out
    terms = [dom.div(weights[l], dom.sub(x, nodes[l])) for l in range(d)]
    total = terms[0]
    for t in terms[1:]:
        total = dom.add(total, t)
    tinv = dom.inv(total)
    return [dom.mul(t, tinv) for t in terms]


def barycentric_eval(dom, values, grid: Grid, point, weights=None):
    """Evaluate the interpolant at a point without forming its coefficients."""
    shape = grid.shape
    m = len(shape)
    if len(point) != m:
        raise ValueError("evaluation point arity does not match grid")
    values = list(values)
    if len(values) != check_shape(shape):
        raise ValueError("tensor size does not match grid shape")
    if weights is None:
        weights = [barycentric_weights(dom, grid.axes[j]) for j in range(m)]
    factors = [
        _axis_factors(dom, grid.axes[j], weights[j], point[j]) for j in range(m)
    ]
    # contract the leading (slowest-varying) axis repeatedly
    flat = values
    for j in range(m):
        fac = factors[j]
        d = shape[j]
        block = len(flat) // d
        nxt = []
        for b in range(block):
            acc = dom.zero
            for l in range(d):
                v = flat[l * block + b]
                if not dom.is_zero(v):
                    acc = dom.add(acc, dom.mul(fac[l], v))
            nxt.append(acc)
        flat = nxt
    return flat[0]


# ---------------------------------------------------------------------------
# forward-difference (uniform grid) evaluation
# ---------------------------------------------------------------------------

def _forward_differences_1d(dom, d):
    def fn(samples):
        a = list(samples)
        # a[r] becomes the r-th forward difference at the axis origin
        for k in range(1, d):
            for i in range(d - 1, k - 1, -1):
                a[i] = dom.sub(a[i], a[i - 1])
        return a

    return fn


def forward_difference_tensor(dom, values, shape):
    """Mixed forward differences at the grid origin, all orders below shape."""
    flat = list(values)
    if len(flat) != check_shape(shape):
        raise ValueError("tensor size does not match shape")
    for j in range(len(shape)):
        flat = _transform_axis(dom, flat, shape, j, _forward_differences_1d(dom, shape[j]))
    return flat


def _binomial_column(dom, s, d):
    """Generalized binomials C(s, r) = prod_{t<r}(s - t) / r! for r < d."""
    out = [dom.one]
    num = dom.one
    fact = dom.one
    for r in range(1, d):
        num = dom.mul(num, dom.sub(s, dom.from_int(r - 1)))
        fact = dom.mul(fact, dom.from_int(r))
        out.append(dom.div(num, fact))
    return out


def gregory_eval(dom, values, grid: Grid, point, differences=None):
    """Evaluate via mixed forward differences; every axis must be uniform."""
    shape = grid.shape
    m = len(shape)
    if len(point) != m:
        raise ValueError("evaluation point arity does not match grid")
    spacings = []
    for j in range(m):
        h = grid.axis_spacing(dom, j)
        if h is None:
            raise ValueError(f"grid axis {j} is not uniformly spaced")
        spacings.append(h)
    if differences is None:
        differences = forward_difference_tensor(dom, values, shape)
    cols = []
    for j in range(m):
        s = dom.div(dom.sub(point[j], grid.axes[j][0]), spacings[j])
        cols.append(_binomial_column(dom, s, shape[j]))
    # same axis-contraction scheme as barycentric_eval
    flat = differences
    for j in range(m):
        col = cols[j]
        d = shape[j]
        block = len(flat) // d
        nxt = []
        for b in range(block):
            acc = dom.zero
            for r in range(d):
                v = flat[r * block + b]
                if not dom.is_zero(v):
                    acc = dom.add(acc, dom.mul(col[r], v))
            nxt.append(acc)
        flat = nxt
    return flat[0]


# ---------------------------------------------------------------------------
# division by a linear factor, opening quotients
# ---------------------------------------------------------------------------

def divide_by_linear(dom, f: MultiPoly, axis: int, v):
    """Exact division f = q*(X_axis - v) + r with r of degree 0 in X_axis.

    Both q and r keep f's shape (top coefficients zero), so quotients can be
    committed under the same reference string as f.
    """
    if not 0 <= axis < f.arity:
        raise ValueError("axis out of range")
    d = f.shape[axis]
    qc = [dom.zero] * len(f.coeffs)
    rc = list(f.coeffs)
    if d > 1:
        strides = lex_strides(f.shape)
        step = strides[axis]
        outer = 1
        for j in range(axis):
            outer *= f.shape[j]
        inner = step
        block = d * step
        for o in range(outer):
            base_o = o * block
            for i in range(inner):
                base = base_o + i
                # synthetic division along the fiber, highest degree first
                carry = rc[base + (d - 1) * step]
                rc[base + (d - 1) * step] = dom.zero
                for c in range(d - 2, -1, -1):
                    pos = base + c * step
                    qc[pos] = carry
                    carry = dom.add(rc[pos], dom.mul(v, carry))
                    rc[pos] = dom.zero
                rc[base] = carry
    return MultiPoly(f.shape, tuple(qc)), MultiPoly(f.shape, tuple(rc))


def multiply_by_linear(dom, f: MultiPoly, axis: int, v) -> MultiPoly:
    """f * (X_axis - v), used to re-expand division results in checks.

    Requires f's top coefficient along the axis to be zero so the product
    still fits the shape.
    """
    if not 0 <= axis < f.arity:
        raise ValueError("axis out of range")
    d = f.shape[axis]
    strides = lex_strides(f.shape)
    step = strides[axis]
    out = [dom.zero] * len(f.coeffs)
    outer = 1
    for j in range(axis):
        outer *= f.shape[j]
    inner = step
    block = d * step
    for o in range(outer):
        base_o = o * block
        for i in range(inner):
            base = base_o + i
            top = f.coeffs[base + (d - 1) * step]
            if not dom.is_zero(top):
                raise ValueError("product would overflow the degree bound")
            for c in range(d - 1):
                pos = base + c * step
                fc = f.coeffs[pos]
                if dom.is_zero(fc):
                    continue
                out[pos + step] = dom.add(out[pos + step], fc)
                out[pos] = dom.sub(out[pos], dom.mul(fc, v))
    return MultiPoly(f.shape, tuple(out))


def open_quotients(dom, f: MultiPoly, point):
    """Peel off one variable at a time: f - f(w) = sum_i q_i * (X_i - w_i).

    Returns the m quotients (each in f's shape) and the value y = f(point);
    the telescoping identity holds coefficient-exactly.
    """
    if len(point) != f.arity:
        raise ValueError("point arity does not match polynomial")
    quotients = []
    rem = f
    for axis, w in enumerate(point):
        q, rem = divide_by_linear(dom, rem, axis, w)
        quotients.append(q)
    return quotients, rem.coeffs[0]


# ---------------------------------------------------------------------------
# monomial-count predictors
# ---------------------------------------------------------------------------

def monomial_count(m: int, n: int) -> int:
    """Number of m-variate monomials of total degree at most n: C(m+n, n)."""
    if m < 1 or n < 0:
        raise ValueError("need m >= 1 and n >= 0")
    c = math.comb(m + n, n)
    if c >= 1 << 64:
        raise OverflowError(f"monomial count C({m + n},{n}) exceeds 64-bit range")
    return c


def degree_for_budget(budget: int, m: int) -> int:
    """Largest integer n with n^m <= budget (per-axis degree for a point budget)."""
    if budget < 1 or m < 1:
        raise ValueError("need budget >= 1 and m >= 1")
    n = max(1, int(round(budget ** (1.0 / m))))
    while n**m > budget:
        n -= 1
    while (n + 1) ** m <= budget:
        n += 1
    return n


# ---------------------------------------------------------------------------
# wire format
# ---------------------------------------------------------------------------

_POLY_MAGIC = b"TCPL"
_TENSOR_MAGIC = b"TCTN"
WIRE_VERSION = 1


def _pack_shape_header(magic: bytes, shape) -> bytes:
    head = magic + struct.pack("<HH", WIRE_VERSION, len(shape))
    for d in shape:
        head += struct.pack("<I", d)
    return head


def _unpack_shape_header(raw: bytes, magic: bytes):
    if raw[:4] != magic:
        raise ValueError(f"bad magic, expected {magic!r}")
    version, m = struct.unpack_from("<HH", raw, 4)
    if version != WIRE_VERSION:
        raise ValueError(f"unsupported version {version}")
    off = 8
    shape = []
    for _ in range(m):
        (d,) = struct.unpack_from("<I", raw, off)
        shape.append(d)
        off += 4
    return tuple(shape), off


def poly_to_bytes(backend, f: MultiPoly) -> bytes:
    out = [_pack_shape_header(_POLY_MAGIC, f.shape)]
    out.extend(backend.encode_scalar(c) for c in f.coeffs)
    return b"".join(out)


def poly_from_bytes(backend, raw: bytes) -> MultiPoly:
    shape, off = _unpack_shape_header(raw, _POLY_MAGIC)
    size = check_shape(shape)
    w = backend.scalar_bytes
    if len(raw) != off + size * w:
        raise ValueError("polynomial payload length mismatch")
    coeffs = tuple(
        backend.decode_scalar(raw[off + k * w : off + (k + 1) * w]) for k in range(size)
    )
    return MultiPoly(shape, coeffs)


def tensor_to_bytes(backend, shape, values) -> bytes:
    size = check_shape(shape)
    values = list(values)
    if len(values) != size:
        raise ValueError("tensor size does not match shape")
    out = [_pack_shape_header(_TENSOR_MAGIC, shape)]
    out.extend(backend.encode_scalar(v) for v in values)
    return b"".join(out)


def tensor_from_bytes(backend, raw: bytes):
    shape, off = _unpack_shape_header(raw, _TENSOR_MAGIC)
    size = check_shape(shape)
    w = backend.scalar_bytes
    if len(raw) != off + size * w:
        raise ValueError("tensor payload length mismatch")
    values = [
        backend.decode_scalar(raw[off + k * w : off + (k + 1) * w]) for k in range(size)
    ]
    return shape, values
