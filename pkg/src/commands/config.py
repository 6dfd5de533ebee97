"""Run configs: Lua scripts, executed in a sandbox, that set globals.

Example:

    domain = [[
    z1 disc 0 0 0.5
    default disc 0 0 0.5
    ]]
    f = "exp(z1 + z2)"
    n = 1
    epsilon = 1e-3
    schedule = {0.5, 0.2, 0.1}
    m = {10, 100}
    series = {term = "z{n}^{n}/{n}^2", bound = "pseries 2", horizon = 50}
    thresholds = {infinity = 1e3, cauchy = 1e-3}
    seed = 0

`series.bound` may also be a Lua function of n.
"""

from dataclasses import dataclass, field, replace
import logging

from lupa import LuaError

from lua.sandbox import LuaSandbox
from utils import lua as lua_utils
import utils.convert
import utils.settings


logger = logging.getLogger(__name__)

CONFIG_GLOBALS = (
    'domain', 'f', 'n', 'epsilon', 'schedule', 'm', 'series', 'thresholds',
    'seed', 'resolution', 'validate_density',
)


class ConfigError(ValueError):
    """Raised for unreadable, malformed or inconsistent run configs."""


@dataclass(frozen=True)
class RunConfig:
    """Everything a command needs, after config and flags are merged.

    Fields:
    - domain -- domain config text
    - f -- expression text, 'inf', or None
    - n -- maximal derivative order per variable
    - epsilon -- error budget
    - schedule -- tuple of chordal fit tolerances
    - m -- tuple of counterexample sizes
    - series -- dict with 'term', 'bound', 'horizon' (and optional
      'epsilon'), or None
    - thresholds -- dict with 'infinity' and 'cauchy'
    - seed -- integer seed for every random choice
    - resolution -- grid spacing for geometric checks
    - validate_density -- validation samples per fit sample, per factor
    - out -- output directory
    """

    domain: str = ''
    f: str = None
    n: int = 0
    epsilon: float = 1e-3
    schedule: tuple = ()
    m: tuple = ()
    series: dict = None
    thresholds: dict = field(default_factory=lambda: {
        'infinity': utils.settings.INFINITY_THRESHOLD,
        'cauchy': utils.settings.CAUCHY_TOLERANCE,
    })
    seed: int = 0
    resolution: float = utils.settings.DEFAULT_RESOLUTION
    validate_density: int = utils.settings.VALIDATION_FACTOR
    out: str = '.'

    def merged(self, **overrides):
        """Return a copy with every non-None override applied."""
        return _checked(replace(self, **{k: v for k, v in overrides.items() if v is not None}))


def _checked(config):
    try:
        n = utils.convert.to_order(config.n)
        epsilon = utils.convert.to_positive(config.epsilon, 'epsilon')
        resolution = utils.convert.to_positive(config.resolution, 'resolution')
        schedule = tuple(utils.convert.to_positive(t, 'schedule entry') for t in config.schedule)
        m = tuple(utils.convert.to_order(k) for k in config.m)
        density = utils.convert.to_order(config.validate_density)
        if density < 2:
            raise ValueError(f"validate_density must be at least 2, not {density}")
        seed = int(config.seed)
    except (TypeError, ValueError) as e:
        raise ConfigError(str(e)) from e
    if config.f is not None and not isinstance(config.f, str):
        raise ConfigError(f"f must be expression text, not {config.f!r}")
    if not isinstance(config.domain, str):
        raise ConfigError("domain must be a string of domain lines")
    if config.series is not None:
        missing = {'term', 'bound'} - set(config.series)
        if missing:
            raise ConfigError(f"series is missing {sorted(missing)}")
    thresholds = dict(config.thresholds)
    unknown = set(thresholds) - {'infinity', 'cauchy'}
    if unknown:
        raise ConfigError(f"Unknown thresholds {sorted(unknown)}")
    return replace(config, n=n, epsilon=epsilon, resolution=resolution, schedule=schedule, m=m,
                   validate_density=density, seed=seed, thresholds={**RunConfig().thresholds, **thresholds})


def load_config_text(source, name='config'):
    """Run config source in a fresh sandbox and build a RunConfig."""
    sandbox = LuaSandbox()
    try:
        sandbox.execute(source)
    except LuaError as e:
        raise ConfigError(f"{name}: {e}") from e
    values = {key: lua_utils.to_python(value) for key, value in sandbox.user_globals().items()}
    unknown = sorted(set(values) - set(CONFIG_GLOBALS))
    if unknown:
        logger.warning("%s: ignoring unknown globals %s", name, ', '.join(map(str, unknown)))
    kwargs = {key: values[key] for key in CONFIG_GLOBALS if key in values}
    for key in ('schedule', 'm'):
        if key in kwargs:
            value = kwargs[key]
            if isinstance(value, dict) and not value:
                value = []
            kwargs[key] = tuple(value) if isinstance(value, list) else (value,)
    return _checked(RunConfig(**kwargs))


def load_config(path):
    """Read and run a config file; raises ConfigError if it cannot be read."""
    try:
        with open(path) as config_file:
            source = config_file.read()
    except OSError as e:
        raise ConfigError(f"Cannot read config {path}: {e}") from e
    return load_config_text(source, path)
