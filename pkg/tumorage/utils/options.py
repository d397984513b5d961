import math
import os
import yaml
from collections import OrderedDict
from copy import deepcopy
from os import path as osp

from tumorage.utils.errors import ConfigError
from tumorage.utils.misc import sha256_file
from tumorage.version import __version__

# percentile rows of the published age table, cm
DEFAULT_GRID = [0.3, 0.4, 0.5, 0.7, 1.0, 1.3, 1.8, 2.5, 3.3, 4.5, 6.0, 8.2, 11.0, 14.9]

DEFAULT_OPT = OrderedDict(
    name='tumorage',
    manual_seed=0,
    num_threads=1,
    model=OrderedDict(type='RdtMixture', p_negative=0.35, lambda_pos=0.79, lambda_neg=5.0),
    sampler=OrderedDict(rho=0.0),
    simulation=OrderedDict(v0=0.01, v_max=4200.0, h_days=245.0, n_histories=10000, max_steps=10000, block_size=64),
    inversion=OrderedDict(grid=list(DEFAULT_GRID), crossings='occupancy', bucket_factor=10.0),
    query=OrderedDict(diameters=[5.0]),
    sensitivity=OrderedDict(rhos=[0.0, 0.4], reference_diameters=[2.5, 3.3, 4.5, 6.0, 8.2]),
    fit=OrderedDict(min_per_side=2, metrics=OrderedDict(ks_distance=OrderedDict(type='ks_distance'))),
    export=OrderedDict(n_histories=None, ages=[5.0, 10.0, 15.0, 20.0, 25.0, 30.0]),
    path=OrderedDict(results_root=None))

OUTPUT_ENV = 'TUMORAGE_OUTPUT_DIR'


def ordered_yaml():
    """Support OrderedDict for yaml.

    Returns:
        tuple: yaml Loader and Dumper.
    """
    try:
        from yaml import CSafeDumper as Dumper
        from yaml import CSafeLoader as Loader
    except ImportError:
        from yaml import SafeDumper as Dumper
        from yaml import SafeLoader as Loader

    _mapping_tag = yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG

    def dict_representer(dumper, data):
        return dumper.represent_dict(data.items())

    def dict_constructor(loader, node):
        return OrderedDict(loader.construct_pairs(node))

    Dumper.add_representer(OrderedDict, dict_representer)
    Loader.add_constructor(_mapping_tag, dict_constructor)
    return Loader, Dumper


def yaml_load(f):
    """Load yaml file or string.

    Args:
        f (str): File path or a python string.

    Returns:
        dict: Loaded dict.
    """
    if os.path.isfile(f):
        with open(f, 'r') as f:
            return yaml.load(f, Loader=ordered_yaml()[0])
    else:
        return yaml.load(f, Loader=ordered_yaml()[0])


def yaml_dump(opt, f):
    """Dump an option dict to an open file, keeping key order."""
    yaml.dump(_plain(opt), f, Dumper=ordered_yaml()[1], default_flow_style=None, sort_keys=False)


def _plain(value):
    # tuples and numpy scalars are not representable by the safe dumper
    if isinstance(value, dict):
        return OrderedDict((k, _plain(v)) for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, 'item'):
        return value.item()
    return value


def dict2str(opt, indent_level=1):
    """dict to string for printing options.

    Args:
        opt (dict): Option dict.
        indent_level (int): Indent level. Default: 1.

    Return:
        (str): Option string for printing.
    """
    msg = '\n'
    for k, v in opt.items():
        if isinstance(v, dict):
            msg += ' ' * (indent_level * 2) + k + ':['
            msg += dict2str(v, indent_level + 1)
            msg += ' ' * (indent_level * 2) + ']\n'
        else:
            msg += ' ' * (indent_level * 2) + k + ': ' + str(v) + '\n'
    return msg


def merge_options(base, update):
    """Recursively merge ``update`` into a copy of ``base``."""
    out = deepcopy(base)
    for k, v in update.items():
        if isinstance(v, dict) and isinstance(out.get(k), dict):
            out[k] = merge_options(out[k], v)
        else:
            out[k] = deepcopy(v)
    return out


def force_update(opt, entries):
    """Apply ``key:sub=value`` overrides to existing keys.

    Values are parsed as YAML scalars or flow lists, e.g.
    ``simulation:n_histories=1000`` or ``inversion:grid=[1.0, 2.0]``.
    """
    for entry in entries:
        if '=' not in entry:
            raise ConfigError(f'Invalid --force_yml entry {entry!r}, expected key:sub=value.')
        keys, value = entry.split('=', 1)
        keys = [k.strip() for k in keys.strip().split(':')]
        node = opt
        for key in keys[:-1]:
            if not isinstance(node.get(key), dict):
                raise ConfigError(f'Unknown option group {key!r} in {entry!r}.')
            node = node[key]
        # now do not support creating new keys
        if keys[-1] not in node:
            raise ConfigError(f'Unknown option {keys[-1]!r} in {entry!r}.')
        node[keys[-1]] = yaml.safe_load(value.strip())
    return opt


def load_options(opt_path=None, force_yml=None):
    """Build the option dict of a run.

    Defaults are the published parameter values; an option file (which may be
    a previously written ``manifest.yml``) and ``--force_yml`` entries are
    merged on top.
    """
    opt = deepcopy(DEFAULT_OPT)
    if opt_path is not None:
        if not osp.isfile(opt_path):
            raise ConfigError(f'Option file {opt_path} does not exist.')
        loaded = yaml_load(opt_path)
        if not isinstance(loaded, dict):
            raise ConfigError(f'Option file {opt_path} does not contain a mapping.')
        loaded.pop('manifest', None)
        opt = merge_options(opt, loaded)
    if force_yml:
        force_update(opt, force_yml)
    return opt


def default_results_root(opt, command):
    root = os.environ.get(OUTPUT_ENV, 'results')
    return osp.join(root, f"{opt['name']}_{command}")


def validate_options(opt):
    """Check an option dict, raising ConfigError on the first invalid value."""
    sim = opt['simulation']
    try:
        v0, v_max = float(sim['v0']), float(sim['v_max'])
        h_days = float(sim['h_days'])
        n_histories, max_steps = int(sim['n_histories']), int(sim['max_steps'])
        block_size = int(sim['block_size'])
        rho = float(opt['sampler']['rho'])
        seed = int(opt['manual_seed'])
        num_threads = int(opt['num_threads'])
        p_negative = float(opt['model']['p_negative'])
        lambda_pos, lambda_neg = float(opt['model']['lambda_pos']), float(opt['model']['lambda_neg'])
        bucket_factor = float(opt['inversion']['bucket_factor'])
        query_diameters = [float(d) for d in opt['query']['diameters']]
        reference_diameters = [float(d) for d in opt['sensitivity']['reference_diameters']]
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f'Invalid numeric option: {e}') from e

    if not (math.isfinite(v0) and math.isfinite(v_max)) or not 0 < v0 < v_max:
        raise ConfigError(f'Need 0 < v0 < v_max, got v0={v0}, v_max={v_max}.')
    if not math.isfinite(h_days) or h_days <= 0:
        raise ConfigError(f'h_days must be positive, got {h_days}.')
    if n_histories < 1:
        raise ConfigError(f'n_histories must be >= 1, got {n_histories}.')
    if max_steps < 1 or block_size < 1:
        raise ConfigError('max_steps and block_size must be >= 1.')
    if seed < 0:
        raise ConfigError(f'manual_seed must be non-negative, got {seed}.')
    if num_threads < 1:
        raise ConfigError(f'num_threads must be >= 1, got {num_threads}.')
    check_rho(rho)
    for r in opt['sensitivity']['rhos']:
        check_rho(r)
    # imported here, the grid type and crossing modes live with the inversion code
    from tumorage.inversion import CROSSING_MODES, DiameterGrid
    if opt['inversion']['crossings'] not in CROSSING_MODES:
        raise ConfigError(f'inversion:crossings must be one of {CROSSING_MODES}, '
                          f"got {opt['inversion']['crossings']!r}.")
    if not math.isfinite(bucket_factor) or bucket_factor <= 0:
        raise ConfigError(f'inversion:bucket_factor must be positive, got {bucket_factor}.')
    if not query_diameters or not all(math.isfinite(d) and d > 0 for d in query_diameters):
        raise ConfigError(f'query:diameters must be positive numbers, got {query_diameters}.')
    if not reference_diameters:
        raise ConfigError('sensitivity:reference_diameters must not be empty.')

    if not 0 <= p_negative <= 1:
        raise ConfigError(f'p_negative must lie in [0, 1], got {p_negative}.')
    if not lambda_pos > 0 or not lambda_neg > 0:
        raise ConfigError('lambda_pos and lambda_neg must be positive.')

    DiameterGrid.from_options(opt)
    return opt


def check_rho(rho):
    try:
        rho = float(rho)
    except (TypeError, ValueError) as e:
        raise ConfigError(f'rho must be a number, got {rho!r}.') from e
    if not 0 <= rho < 1:
        raise ConfigError(f'rho must lie in [0, 1), got {rho}.')
    return rho


def write_manifest(results_root, opt, command, outputs):
    """Write ``manifest.yml`` next to the outputs of a run.

    The manifest holds the full option dict, so ``-opt manifest.yml``
    reproduces the run, plus the tool version and sha256 checksums of the
    written files under the ``manifest`` key.

    Args:
        results_root (str): Output directory.
        opt (dict): Options of the run.
        command (str): Subcommand name.
        outputs (list[str]): File names inside ``results_root``.

    Returns:
        str: Path of the manifest.
    """
    manifest = deepcopy(opt)
    manifest['path'] = OrderedDict(results_root=None)
    manifest['manifest'] = OrderedDict(
        command=command,
        version=__version__,
        outputs=OrderedDict((name, sha256_file(osp.join(results_root, name))) for name in outputs))
    path = osp.join(results_root, 'manifest.yml')
    with open(path, 'w') as f:
        yaml_dump(manifest, f)
    return path
