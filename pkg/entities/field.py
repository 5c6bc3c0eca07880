"""
Periodic grids and sampled complex fields
"""
from dataclasses import dataclass, field
import logging

import numpy as np

from config.settings import MIN_GRID_POINTS, SUPPORT_FRACTION, FIELD_CSV_HEADER
from core.errors import ConfigError, SupportError
from core.utils import format_float

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GridSpec:
    """Uniform periodic grid x_j = x_min + j*h, j = 0..n-1"""
    x_min: float
    x_max: float
    n: int

    def __post_init__(self):
        if not self.x_max > self.x_min:
            raise ConfigError(f"grid needs x_max > x_min, got [{self.x_min}, {self.x_max}]")
        if self.n < MIN_GRID_POINTS or self.n & (self.n - 1):
            raise ConfigError(f"grid size must be a power of two >= {MIN_GRID_POINTS}, got {self.n}")

    @property
    def length(self):
        return self.x_max - self.x_min

    @property
    def spacing(self):
        return self.length / self.n

    @property
    def x(self):
        return self.x_min + self.spacing * np.arange(self.n)

    @property
    def center(self):
        return 0.5 * (self.x_min + self.x_max)

    @property
    def wavenumbers(self):
        """Angular wavenumbers in numpy FFT order"""
        return 2.0 * np.pi * np.fft.fftfreq(self.n, d=self.spacing)

    def central_mask(self, fraction=SUPPORT_FRACTION):
        """Grid points inside the central `fraction` of the box"""
        return np.abs(self.x - self.center) <= 0.5 * fraction * self.length

    def in_support(self, x, fraction=SUPPORT_FRACTION):
        # relative slack absorbs roundoff from mapping support edges back and forth
        limit = 0.5 * fraction * self.length * (1.0 + 1e-12)
        return np.abs(np.asarray(x) - self.center) <= limit

    def support_interval(self, fraction=SUPPORT_FRACTION):
        half = 0.5 * fraction * self.length
        return self.center - half, self.center + half

    def to_dict(self):
        return {'x_min': self.x_min, 'x_max': self.x_max, 'n': self.n}


@dataclass
class ComplexField:
    """Samples of u(time, x) on a grid"""
    grid: GridSpec
    samples: np.ndarray
    time: float

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=complex)
        if self.samples.shape != (self.grid.n,):
            raise ConfigError(f"field has {self.samples.shape} samples for a grid of {self.grid.n}")
        if not np.all(np.isfinite(self.samples)):
            raise ConfigError("field samples must be finite")
        self.time = float(self.time)

    @classmethod
    def from_solution(cls, solution, grid, time):
        """Sample an evaluator u(t, x) on the grid at one time"""
        return cls(grid, solution(time, grid.x), time)

    @classmethod
    def zeros(cls, grid, time=0.0):
        return cls(grid, np.zeros(grid.n, dtype=complex), time)

    def copy(self, samples=None, time=None):
        return ComplexField(self.grid,
                            self.samples.copy() if samples is None else samples,
                            self.time if time is None else time)

    def spectrum(self):
        return np.fft.fft(self.samples)

    def derivative(self, order=1):
        """Spectral x-derivative"""
        k = self.grid.wavenumbers
        return np.fft.ifft((1j * k) ** order * self.spectrum())

    def interpolate(self, xq, fraction=SUPPORT_FRACTION):
        """Trigonometric interpolation at arbitrary points

        Points outside the central `fraction` of the box raise SupportError.
        """
        xq = np.atleast_1d(np.asarray(xq, dtype=float))
        if not np.all(self.grid.in_support(xq, fraction)):
            worst = float(np.max(np.abs(xq - self.grid.center)))
            raise SupportError(f"interpolation point {worst:.6g} from center is outside "
                               f"the reliable {fraction:.0%} of the box")
        n = self.grid.n
        coeffs = self.spectrum() / n
        k = self.grid.wavenumbers.copy()
        # split the Nyquist mode evenly between +k and -k so real data stays real
        nyquist = n // 2
        offsets = xq - self.grid.x_min
        values = np.exp(1j * np.outer(offsets, k)) @ coeffs
        values += coeffs[nyquist] * (np.cos(k[nyquist] * offsets) - np.exp(1j * k[nyquist] * offsets))
        return values


@dataclass
class FieldTriple:
    """Three slices u(t-h), u(t), u(t+h) for gridded residuals"""
    before: ComplexField
    center: ComplexField
    after: ComplexField
    step: float = field(default=0.0)

    def __post_init__(self):
        if not self.step:
            self.step = 0.5 * (self.after.time - self.before.time)
        if self.step <= 0:
            raise ConfigError("field triple needs increasing times")

    @classmethod
    def from_solution(cls, solution, grid, time, step):
        return cls(ComplexField.from_solution(solution, grid, time - step),
                   ComplexField.from_solution(solution, grid, time),
                   ComplexField.from_solution(solution, grid, time + step),
                   step)

    def time_derivative(self):
        return (self.after.samples - self.before.samples) / (2.0 * self.step)


def write_fields_csv(path, fields):
    """Write one or more slices as rows t,x,re,im,abs"""
    blocks = []
    for f in fields:
        u = f.samples
        blocks.append(np.column_stack([np.full(f.grid.n, f.time), f.grid.x, u.real, u.imag, np.abs(u)]))
    data = np.vstack(blocks) if blocks else np.zeros((0, 5))
    with open(path, 'w', encoding='utf-8') as out:
        out.write(FIELD_CSV_HEADER + '\n')
        for row in data:
            out.write(','.join(format_float(v) for v in row) + '\n')
    return path


def read_fields_csv(path):
    """Read slices written by write_fields_csv (an abs column is optional)

    Returns fields in file order. Each slice must sit on a uniform periodic
    grid; x_max is recovered as x_min + n*h.
    """
    data = np.loadtxt(path, delimiter=',', skiprows=1, ndmin=2)
    if data.shape[1] < 4:
        raise ConfigError(f"{path}: expected columns t,x,re,im")
    fields = []
    times = data[:, 0]
    starts = np.flatnonzero(np.r_[True, times[1:] != times[:-1]])
    ends = np.r_[starts[1:], len(times)]
    for start, end in zip(starts, ends):
        x = data[start:end, 1]
        n = len(x)
        if n < 2:
            raise ConfigError(f"{path}: slice at t={times[start]} has fewer than two points")
        h = (x[-1] - x[0]) / (n - 1)
        if not np.allclose(np.diff(x), h, rtol=1e-9, atol=1e-12):
            raise ConfigError(f"{path}: slice at t={times[start]} is not on a uniform grid")
        grid = GridSpec(float(x[0]), float(x[0] + n * h), n)
        samples = data[start:end, 2] + 1j * data[start:end, 3]
        fields.append(ComplexField(grid, samples, float(times[start])))
    logger.debug("read %d slice(s) from %s", len(fields), path)
    return fields
