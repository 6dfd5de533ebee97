import pytest

from commands.config import ConfigError, RunConfig, load_config, load_config_text
from utils import lua as lua_utils
import utils.settings


EXAMPLE = '''
domain = [[
z1 disc 0 0 0.5
default disc 0 0 0.5
]]
f = "exp(z1 + z2)"
n = 1
epsilon = 1e-3
schedule = {0.5, 0.2, 0.1}
m = {10, 100}
seed = 7
'''


def test_example_config():
    config = load_config_text(EXAMPLE)
    assert config.f == "exp(z1 + z2)"
    assert 'default disc' in config.domain
    assert config.n == 1
    assert config.epsilon == 1e-3
    assert config.schedule == (0.5, 0.2, 0.1)
    assert config.m == (10, 100)
    assert config.seed == 7
    assert config.resolution == utils.settings.DEFAULT_RESOLUTION
    assert config.thresholds == {'infinity': 1e3, 'cauchy': 1e-3}


def test_scalars_become_tuples():
    config = load_config_text('schedule = 0.25\nm = 4\n')
    assert config.schedule == (0.25,)
    assert config.m == (4,)
    assert load_config_text('schedule = {}').schedule == ()


def test_computed_values():
    config = load_config_text('''
        local targets = {}
        for k = 1, 4 do targets[k] = 2 ^ -k end
        schedule = targets
        epsilon = math.sqrt(1e-6)
    ''')
    assert config.schedule == (0.5, 0.25, 0.125, 0.0625)
    assert config.epsilon == pytest.approx(1e-3)


def test_unknown_globals_are_ignored(caplog):
    config = load_config_text('colour = "blue"\nn = 2\n', 'cfg.lua')
    assert config.n == 2
    assert 'colour' in caplog.text


def test_lua_function_bound():
    config = load_config_text('''
        series = {
            term = "z{n} / {n}^3",
            bound = function(n) return 1 / n^3 end,
            horizon = 10,
        }
    ''')
    bound = config.series['bound']
    assert lua_utils.is_function(bound)
    assert bound(2) == 0.125
    assert config.series['horizon'] == 10


def test_thresholds_merge():
    config = load_config_text('thresholds = {infinity = 50}')
    assert config.thresholds == {'infinity': 50, 'cauchy': 1e-3}


@pytest.mark.parametrize('source', [
    'n = -1',
    'n = 1.5',
    'epsilon = 0',
    'epsilon = "small"',
    'schedule = {0.1, -0.1}',
    'm = {3, 0.5}',
    'validate_density = 1',
    'f = 3',
    'domain = {1, 2}',
    'series = {term = "z{n}"}',
    'thresholds = {infinty = 3}',
    'resolution = -0.01',
])
def test_invalid_configs(source):
    with pytest.raises(ConfigError):
        load_config_text(source)


def test_lua_failures():
    with pytest.raises(ConfigError, match='cfg.lua'):
        load_config_text('n = = 1', 'cfg.lua')
    with pytest.raises(ConfigError):
        load_config_text('error("nope")')
    # Configs cannot reach the host system.
    with pytest.raises(ConfigError):
        load_config_text('os.execute("true")')


def test_load_config(tmp_path):
    path = tmp_path / 'run.lua'
    path.write_text(EXAMPLE)
    assert load_config(str(path)) == load_config_text(EXAMPLE)
    with pytest.raises(ConfigError, match='Cannot read'):
        load_config(str(tmp_path / 'missing.lua'))


def test_merged():
    config = load_config_text(EXAMPLE)
    merged = config.merged(out='results', seed=None, resolution=0.05)
    assert merged.out == 'results'
    assert merged.seed == 7
    assert merged.resolution == 0.05
    with pytest.raises(ConfigError):
        config.merged(validate_density=0)
    assert RunConfig().merged().schedule == ()
