"""Boundary data on the unit circle.

A :class:`BoundarySpec` represents a function F: T -> C in one of three
forms: a named preset (closed-form evaluation and exact Fourier
coefficients), a finite Fourier coefficient table, or uniform samples
(interpreted as the band-limited trigonometric interpolant).  The module
also owns the angular derivative dF/dtheta and circle L^p norms.

Presets shipped:

    const          F = 1
    mode:<k>       F = e^{ik theta}, k a nonzero integer (alias "mode:1")
    abs-sin        F = |sin theta|            (corners at 0 and pi)
    abs-sin-slope  dF/dtheta of abs-sin: cos(theta) sign(sin theta) a.e.
    conj-quad      F = e^{i theta} + e^{-2i theta}/2   (trace of z + conj(z)^2/2)
    conj-half      F = e^{i theta} + e^{-i theta}/2    (trace of z + conj(z)/2)
    random-trig[:seed]  seeded smooth trigonometric polynomial, degree 6
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import (DiskharmError, InvalidInputError,
                     UnsupportedExponentError)
from .quadrature import integrate_or_raise
from .reports import NormReport

TWO_PI = 2.0 * math.pi

# p = infinity norms refine the evaluation grid until successive maxima
# agree to this relative tolerance (package-wide sup policy).
SUP_REFINE_RTOL = 1e-6

_TWO_OVER_PI = 2.0 / math.pi


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------

def _abs_sin_coeff(n: int) -> complex:
    if n == 0:
        return complex(_TWO_OVER_PI)
    if n % 2:
        return 0j
    return complex(-_TWO_OVER_PI / (n * n - 1))


def _abs_sin_tail_abs(n_trunc: int) -> float:
    # sum of |c_n| over |n| > N: only even modes contribute, telescoping sum
    k = n_trunc // 2
    return _TWO_OVER_PI / (2 * k + 1)


def _abs_sin_tail_env1(n_trunc: int) -> float:
    n = 2 * (n_trunc // 2 + 1)
    return n * _TWO_OVER_PI / (n * n - 1)


def _abs_sin_slope_coeff(n: int) -> complex:
    return 1j * n * _abs_sin_coeff(n)


def _abs_sin_slope_tail_env1(n_trunc: int) -> float:
    n = 2 * (n_trunc // 2 + 1)
    return n * n * _TWO_OVER_PI / (n * n - 1)


def _abs_sin_coeff_array(n_trunc: int) -> np.ndarray:
    ns = np.arange(-n_trunc, n_trunc + 1)
    with np.errstate(divide="ignore"):
        vals = np.where(ns % 2 == 0, -_TWO_OVER_PI / (ns * ns - 1.0), 0.0)
    vals[n_trunc] = _TWO_OVER_PI
    return vals.astype(complex)


def _abs_sin_slope_coeff_array(n_trunc: int) -> np.ndarray:
    ns = np.arange(-n_trunc, n_trunc + 1)
    return 1j * ns * _abs_sin_coeff_array(n_trunc)


@dataclass(frozen=True)
class _Preset:
    label: str
    evaluate: object                 # callable(theta ndarray) -> ndarray
    coeff: object                    # callable(n) -> complex
    tail_abs: object                 # callable(N) -> float, sum_{|n|>N} |c_n|
    tail_env1: object                # callable(N) -> float, sup_{|n|>N} |n c_n|
    corners: tuple = ()
    real_valued: bool = False
    bandwidth: int | None = None     # exact degree when finitely supported
    derivative_name: str | None = None
    coeff_array: object | None = None  # callable(N) -> ndarray, vectorized


_PRESETS: dict[str, _Preset] = {
    "abs-sin": _Preset(
        label="|sin theta|",
        evaluate=lambda t: np.abs(np.sin(t)).astype(complex),
        coeff=_abs_sin_coeff,
        tail_abs=_abs_sin_tail_abs,
        tail_env1=_abs_sin_tail_env1,
        corners=(0.0, math.pi),
        real_valued=True,
        derivative_name="abs-sin-slope",
        coeff_array=_abs_sin_coeff_array,
    ),
    "abs-sin-slope": _Preset(
        label="cos(theta) sign(sin theta)",
        evaluate=lambda t: (np.cos(t) * np.sign(np.sin(t))).astype(complex),
        coeff=_abs_sin_slope_coeff,
        tail_abs=lambda n: math.inf,
        tail_env1=_abs_sin_slope_tail_env1,
        corners=(0.0, math.pi),
        real_valued=True,
        coeff_array=_abs_sin_slope_coeff_array,
    ),
}


def _random_trig_coeffs(seed: int) -> dict[int, complex]:
    rng = np.random.default_rng(seed)
    degree = 6
    out: dict[int, complex] = {}
    for n in range(-degree, degree + 1):
        scale = 0.35 * 0.6 ** abs(n)
        re, im = rng.standard_normal(2)
        out[n] = complex(scale * re, scale * im)
    return out


def _finite_preset_coeffs(name: str) -> dict[int, complex] | None:
    """Coefficient table for the trig-polynomial presets, else None."""
    if name == "const":
        return {0: 1.0 + 0j}
    if name == "conj-quad":
        return {1: 1.0 + 0j, -2: 0.5 + 0j}
    if name == "conj-half":
        return {1: 1.0 + 0j, -1: 0.5 + 0j}
    if name.startswith("mode:"):
        try:
            k = int(name.split(":", 1)[1])
        except ValueError:
            raise InvalidInputError(f"bad mode preset {name!r}") from None
        return {k: 1.0 + 0j}
    if name == "random-trig" or name.startswith("random-trig:"):
        seed = 42
        if ":" in name:
            try:
                seed = int(name.split(":", 1)[1])
            except ValueError:
                raise InvalidInputError(f"bad random-trig seed in {name!r}") from None
        return _random_trig_coeffs(seed)
    return None


def list_presets() -> list[str]:
    """Canonical preset names (the suite's default matrix)."""
    return ["const", "mode:1", "mode:-1", "abs-sin", "conj-quad",
            "conj-half", "random-trig"]


# ---------------------------------------------------------------------------
# core types
# ---------------------------------------------------------------------------

@dataclass
class FourierCoefficients:
    """Coefficients c_n for |n| <= truncation, centered layout."""

    values: np.ndarray          # complex, index i holds c_{i - truncation}
    truncation: int
    tail_estimate: float = 0.0

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (2 * self.truncation + 1,):
            raise InvalidInputError("coefficient array has wrong length")
        if not np.all(np.isfinite(self.values.view(float))):
            raise InvalidInputError("non-finite Fourier coefficient")
        if not (self.tail_estimate >= 0):
            raise InvalidInputError("tail estimate must be nonnegative")

    def coeff(self, n: int) -> complex:
        if abs(n) > self.truncation:
            return 0j
        return complex(self.values[n + self.truncation])

    def as_dict(self) -> dict[int, complex]:
        n = self.truncation
        return {i - n: complex(v) for i, v in enumerate(self.values)
                if v != 0}

    def energy(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))


@dataclass
class BoundarySpec:
    """A boundary function F on the unit circle (see module docstring).

    ``corners`` lists angles where the derivative jumps, so quadrature
    panels never straddle them.  ``derivative_spec`` overrides the derived
    derivative when set.
    """

    kind: str
    name: str | None = None
    coefficients: dict[int, complex] | None = None
    samples: np.ndarray | None = None
    smooth: bool = False
    corners: tuple = ()
    derivative_spec: "BoundarySpec | None" = None
    label: str = ""
    _dft: FourierCoefficients | None = field(default=None, repr=False,
                                             compare=False)

    def __post_init__(self):
        if self.kind not in {"preset", "fourier", "sampled"}:
            raise InvalidInputError(f"unknown boundary kind {self.kind!r}")
        if self.kind == "preset":
            if self.name is None:
                raise InvalidInputError("preset spec needs a name")
            if self.coefficients is None and self.name not in _PRESETS:
                raise InvalidInputError(f"unknown preset {self.name!r}")
        elif self.kind == "fourier":
            if self.coefficients is None:
                raise InvalidInputError("fourier spec needs coefficients")
        elif self.kind == "sampled":
            if self.samples is None:
                raise InvalidInputError("sampled spec needs samples")
            self.samples = np.asarray(self.samples, dtype=complex)
            m = len(self.samples)
            if m < 16 or m & (m - 1):
                raise InvalidInputError(
                    "sampled specs need a power-of-two count >= 16")
            if not np.all(np.isfinite(self.samples.view(float))):
                raise InvalidInputError("non-finite sample value")
        if self.coefficients is not None:
            items = self.coefficients.items()
            if not all(np.isfinite(complex(c).real) and
                       np.isfinite(complex(c).imag) for _, c in items):
                raise InvalidInputError("non-finite Fourier coefficient")
            self.coefficients = {int(n): complex(c) for n, c in items
                                 if c != 0}

    # -- evaluation ---------------------------------------------------------

    def values(self, theta) -> np.ndarray:
        """F(e^{i theta}) at the given angles (vectorized)."""
        theta = np.asarray(theta, dtype=float)
        if self.kind == "preset" and self.coefficients is None:
            return _PRESETS[self.name].evaluate(theta)
        coeffs = self._table()
        out = np.zeros(theta.shape, dtype=complex)
        for n, c in coeffs.items():
            out += c * np.exp(1j * n * theta)
        return out

    def _table(self) -> dict[int, complex]:
        if self.coefficients is not None:
            return self.coefficients
        if self.kind == "sampled":
            return self._sampled_dft().as_dict()
        raise InvalidInputError("spec has no finite coefficient table")

    def _sampled_dft(self) -> FourierCoefficients:
        if self._dft is None:
            m = len(self.samples)
            full = np.fft.fft(self.samples) / m
            half = m // 2
            vals = np.empty(2 * half + 1, dtype=complex)
            for n in range(-half, half + 1):
                vals[n + half] = full[n % m] if n != half else 0.0
            # modes live in [-M/2, M/2); report discarded top-band energy
            tail = float(abs(full[half]))
            self._dft = FourierCoefficients(vals, half, tail)
        return self._dft

    # -- coefficient access --------------------------------------------------

    def coefficient(self, n: int) -> complex:
        n = int(n)
        if self.kind == "preset" and self.coefficients is None:
            return complex(_PRESETS[self.name].coeff(n))
        if self.kind == "sampled":
            return self._sampled_dft().coeff(n)
        return complex(self.coefficients.get(n, 0j))

    @property
    def bandwidth(self) -> int | None:
        """Exact degree when finitely supported, else None."""
        if self.kind == "preset" and self.coefficients is None:
            return _PRESETS[self.name].bandwidth
        if self.kind == "sampled":
            return len(self.samples) // 2
        table = self.coefficients
        return max((abs(n) for n in table), default=0)

    def tail_abs(self, n_trunc: int) -> float:
        """Upper bound for sum of |c_n| over |n| > n_trunc."""
        bw = self.bandwidth
        if bw is not None:
            if n_trunc >= bw:
                return 0.0
            return float(sum(abs(c) for n, c in self._table().items()
                             if abs(n) > n_trunc))
        return float(_PRESETS[self.name].tail_abs(n_trunc))

    def tail_env1(self, n_trunc: int) -> float:
        """Upper bound for sup of |n c_n| over |n| > n_trunc."""
        bw = self.bandwidth
        if bw is not None:
            if n_trunc >= bw:
                return 0.0
            return float(max((abs(n * c) for n, c in self._table().items()
                              if abs(n) > n_trunc), default=0.0))
        return float(_PRESETS[self.name].tail_env1(n_trunc))

    @property
    def real_valued(self) -> bool:
        if self.kind == "preset" and self.coefficients is None:
            return _PRESETS[self.name].real_valued
        if self.kind == "sampled":
            return bool(np.allclose(self.samples.imag, 0.0))
        table = self.coefficients
        return all(table.get(-n, 0j) == c.conjugate()
                   for n, c in table.items())

    def describe(self) -> str:
        return self.label or self.name or self.kind

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        doc: dict = {"kind": self.kind}
        if self.kind == "preset":
            doc["name"] = self.name
        elif self.kind == "fourier":
            doc["coefficients"] = [[n, c.real, c.imag]
                                   for n, c in sorted(self.coefficients.items())]
        else:
            doc["samples"] = [[v.real, v.imag] for v in self.samples]
            if self.smooth:
                doc["smooth"] = True
        if self.derivative_spec is not None:
            doc["derivative"] = self.derivative_spec.to_json()
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "BoundarySpec":
        if not isinstance(doc, dict) or "kind" not in doc:
            raise InvalidInputError("boundary document needs a 'kind' field")
        kind = doc["kind"]
        deriv = doc.get("derivative")
        deriv_spec = cls.from_json(deriv) if deriv else None
        if kind == "preset":
            spec = preset(doc.get("name", ""))
        elif kind == "fourier":
            entries = doc.get("coefficients") or []
            table = {}
            for entry in entries:
                if len(entry) not in (2, 3):
                    raise InvalidInputError("coefficient entries are [n, re, im]")
                n = int(entry[0])
                re = float(entry[1])
                im = float(entry[2]) if len(entry) == 3 else 0.0
                table[n] = table.get(n, 0j) + complex(re, im)
            spec = fourier(table)
        elif kind == "sampled":
            rows = doc.get("samples") or []
            vals = np.array([complex(r[0], r[1] if len(r) > 1 else 0.0)
                             for r in rows])
            spec = sampled(vals, smooth=bool(doc.get("smooth", False)))
        else:
            raise InvalidInputError(f"unknown boundary kind {kind!r}")
        if deriv_spec is not None:
            spec = replace(spec, derivative_spec=deriv_spec)
        return spec


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def preset(name: str) -> BoundarySpec:
    """Build a preset boundary spec by name (see module docstring)."""
    table = _finite_preset_coeffs(name)
    if table is not None:
        spec = BoundarySpec("preset", name=name, coefficients=table,
                            label=name)
        _check_real_symmetry(spec)
        return spec
    if name in _PRESETS:
        spec = BoundarySpec("preset", name=name,
                            corners=_PRESETS[name].corners,
                            label=_PRESETS[name].label)
        _check_real_symmetry(spec)
        return spec
    raise InvalidInputError(f"unknown preset {name!r}")


def fourier(coefficients: dict[int, complex], label: str = "") -> BoundarySpec:
    return BoundarySpec("fourier",
                        coefficients={int(n): complex(c)
                                      for n, c in coefficients.items()},
                        label=label or "fourier")


def sampled(values, smooth: bool = False) -> BoundarySpec:
    return BoundarySpec("sampled", samples=np.asarray(values, dtype=complex),
                        smooth=smooth, label="sampled")


def _check_real_symmetry(spec: BoundarySpec) -> None:
    """Real-valued presets must satisfy c_{-n} = conj(c_n)."""
    if not spec.real_valued:
        return
    for n in range(0, 9):
        lo, hi = spec.coefficient(-n), spec.coefficient(n)
        if abs(lo - hi.conjugate()) > 1e-14 * (1.0 + abs(hi)):
            raise InvalidInputError(
                f"real preset breaks conjugate symmetry at n={n}")


def linear_combination(terms, label: str = "") -> BoundarySpec:
    """alpha*F + beta*G + ... for finite-bandwidth specs."""
    table: dict[int, complex] = {}
    for scalar, spec in terms:
        if spec.bandwidth is None:
            raise InvalidInputError(
                "linear_combination needs finite-bandwidth specs; "
                "materialize first")
        for n, c in spec._table().items():
            table[n] = table.get(n, 0j) + complex(scalar) * c
    return fourier(table, label=label or "combination")


def materialize(spec: BoundarySpec, n_trunc: int) -> BoundarySpec:
    """Truncate any spec to an explicit fourier table of degree n_trunc."""
    coeffs = fourier_coefficients(spec, n_trunc)
    return fourier(coeffs.as_dict(), label=f"{spec.describe()}[N={n_trunc}]")


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def fourier_coefficients(spec: BoundarySpec, n_trunc: int) -> FourierCoefficients:
    """Coefficients c_n for |n| <= n_trunc with a tail-energy estimate."""
    if n_trunc < 0:
        raise InvalidInputError("truncation must be nonnegative")
    if spec.kind == "sampled":
        m = len(spec.samples)
        if 2 * m < 2 * n_trunc + 2:
            raise InvalidInputError(
                f"need at least {n_trunc + 1} samples for truncation {n_trunc}")
        dft = spec._sampled_dft()
        vals = np.array([dft.coeff(n) for n in range(-n_trunc, n_trunc + 1)])
        inside = dft.truncation
        tail = dft.tail_estimate
        if n_trunc < inside:
            tail += float(sum(abs(dft.coeff(n))
                              for n in range(-inside, inside + 1)
                              if abs(n) > n_trunc))
        return FourierCoefficients(vals, n_trunc, tail)
    if spec.kind == "preset" and spec.coefficients is None:
        maker = _PRESETS[spec.name].coeff_array
        if maker is not None:
            return FourierCoefficients(maker(n_trunc), n_trunc,
                                       spec.tail_abs(n_trunc))
    vals = np.array([spec.coefficient(n)
                     for n in range(-n_trunc, n_trunc + 1)])
    return FourierCoefficients(vals, n_trunc, spec.tail_abs(n_trunc))


def discrete_fourier_coefficients(spec: BoundarySpec, n_trunc: int,
                                  n_samples: int = 4096) -> FourierCoefficients:
    """Coefficients by discrete transform of uniform samples of F.

    Cross-check path for the exact coefficient tables; also the only path
    for boundary functions supplied as raw callables through `sampled`.
    """
    if n_samples < 2 * n_trunc + 2:
        raise InvalidInputError("sample count too small for truncation")
    theta = TWO_PI * np.arange(n_samples) / n_samples
    f = spec.values(theta)
    if not np.all(np.isfinite(f.view(float))):
        raise InvalidInputError("non-finite sample value")
    full = np.fft.fft(f) / n_samples
    vals = np.array([full[n % n_samples]
                     for n in range(-n_trunc, n_trunc + 1)])
    band = np.abs(full)
    guard = slice(n_samples // 4, 3 * n_samples // 4)
    tail = float(band[guard].sum())
    return FourierCoefficients(vals, n_trunc, tail)


def boundary_derivative(spec: BoundarySpec) -> BoundarySpec:
    """The angular derivative dF/dtheta as a new spec.

    Fourier tables differentiate termwise (exactly i*n*c_n); presets with
    corners return the a.e. derivative with the jump angles flagged; raw
    samples are refused unless declared smooth (band-limited).
    """
    if spec.derivative_spec is not None:
        return spec.derivative_spec
    if spec.kind == "preset" and spec.coefficients is None:
        name = _PRESETS[spec.name].derivative_name
        if name is None:
            raise InvalidInputError(
                f"no derivative available for preset {spec.name!r}")
        return preset(name)
    if spec.kind == "sampled" and not spec.smooth:
        raise DiskharmError(
            "refusing to differentiate raw samples without a declared "
            "smoothness contract (set smooth=True for band-limited data)")
    table = {n: 1j * n * c for n, c in spec._table().items() if n != 0}
    return fourier(table, label=f"d/dtheta {spec.describe()}")


def _sup_on_refining_grid(evaluate, corners=(), m0=2048, mmax=1 << 18,
                          rtol=SUP_REFINE_RTOL):
    """Max of a scalar over nested doubling grids on the circle."""
    m = m0
    history = []
    prev = None
    extra = np.asarray(corners, dtype=float)
    while True:
        theta = TWO_PI * np.arange(m) / m
        if extra.size:
            theta = np.concatenate([theta, extra])
        cur = float(np.max(evaluate(theta)))
        history.append(cur)
        if prev is not None and abs(cur - prev) <= rtol * (1.0 + abs(cur)):
            return cur, abs(cur - prev), {"grid": m, "history": history}
        if m >= mmax:
            return cur, abs(cur - (prev if prev is not None else cur)), \
                {"grid": m, "history": history, "budget_exhausted": True}
        prev = cur
        m *= 2


def lp_circle_norm(spec: BoundarySpec, p, *, tol=1e-11) -> NormReport:
    """The circle norm (mean of |F|^p)^(1/p), or the sup for p = inf."""
    from .reports import decode_p
    p = decode_p(p)
    if p < 1:
        raise UnsupportedExponentError("circle norms need p >= 1")
    if math.isinf(p):
        value, err, grid = _sup_on_refining_grid(
            lambda t: np.abs(spec.values(t)), corners=spec.corners)
        return NormReport("circle-Lp", p, value, err, grid=grid,
                          notes=("sup over nested refining grids "
                                 "(monotone under refinement)",))
    res = integrate_or_raise(
        lambda t: np.abs(spec.values(t)) ** p, 0.0, TWO_PI,
        tol_abs=tol, breakpoints=spec.corners, max_panels=8192)
    integral = max(res.real, 0.0) / TWO_PI
    err_int = res.error / TWO_PI
    value = integral ** (1.0 / p)
    if integral > err_int > 0:
        err = value * err_int / (p * integral)
    else:
        err = err_int ** (1.0 / p)
    return NormReport("circle-Lp", p, value, err,
                      grid={"method": "adaptive-gk15", "panels": res.panels})
