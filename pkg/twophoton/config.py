import hashlib
import json
from dataclasses import asdict, dataclass, fields

from .errors import ParameterError
from .gfunc import DEFAULT_TOL, MIN_GRID_PER_INTERVAL
from .model import BARGMANN_INDICES, Sector, parse_q
from .oracle import DEFAULT_FOCK_CUTOFF

COMMANDS = ('gcurve', 'spectrum', 'baselines', 'approx', 'variational',
            'oracle', 'compare', 'gap-report')
FORMATS = ('csv', 'json')

DEFAULT_ORDERS = (0, 1, 2, 4, 8)
DEFAULT_EPS_LADDER = (1e-2, 1e-3, 1e-4)


@dataclass(frozen=True)
class RunConfig:
    command: str
    omega: float = 1.0
    g: float = None
    g_min: float = 0.0
    g_max: float = 0.45
    g_steps: int = 10
    q: str = 'both'
    parity: str = 'both'
    e_min: float = -2.0
    e_max: float = 6.0
    points: int = 400
    tol: float = DEFAULT_TOL
    n_max: int = None
    grid_points: int = MIN_GRID_PER_INTERVAL
    fock_cutoff: int = DEFAULT_FOCK_CUTOFF
    orders: tuple = DEFAULT_ORDERS
    levels: int = 10
    eps: tuple = DEFAULT_EPS_LADDER
    workers: int = 1
    format: str = 'csv'
    out: str = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ParameterError("unknown command %r" % (self.command,))
        if self.format not in FORMATS:
            raise ParameterError("unknown format %r" % (self.format,))
        if self.g is None and self.g_steps < 1:
            raise ParameterError("g_steps must be positive")
        object.__setattr__(self, 'orders', tuple(int(n) for n in self.orders))
        object.__setattr__(self, 'eps', tuple(float(e) for e in self.eps))
        # validate selectors early
        self.sectors()

    @classmethod
    def from_args(cls, namespace):
        values = {f.name: getattr(namespace, f.name) for f in fields(cls)
                  if getattr(namespace, f.name, None) is not None}
        return cls(**values)

    @classmethod
    def from_dict(cls, data):
        return cls(**data)

    def to_dict(self):
        data = asdict(self)
        data['orders'] = list(self.orders)
        data['eps'] = list(self.eps)
        return data

    def g_values(self):
        if self.g is not None:
            return [self.g]
        if self.g_steps == 1:
            return [self.g_min]
        step = (self.g_max - self.g_min) / (self.g_steps - 1)
        return [self.g_min + i * step for i in range(self.g_steps)]

    def bargmann_indices(self):
        if self.q == 'both':
            return list(BARGMANN_INDICES)
        return [parse_q(self.q)]

    def parities(self):
        if self.parity == 'both':
            return [-1, 1]
        try:
            value = int(self.parity)
        except ValueError:
            raise ParameterError("parity must be +1, -1 or both, got %r" % (self.parity,))
        if value not in (-1, 1):
            raise ParameterError("parity must be +1, -1 or both, got %r" % (self.parity,))
        return [value]

    def sectors(self):
        return [Sector(q, p) for q in self.bargmann_indices() for p in self.parities()]


def canonical_json(config):
    return json.dumps(config.to_dict(), sort_keys=True, separators=(',', ':'))


def config_hash(config):
    return hashlib.sha256(canonical_json(config).encode('utf-8')).hexdigest()[:16]
