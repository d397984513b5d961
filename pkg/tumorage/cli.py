import argparse
import json
import logging
import sys
from collections import OrderedDict
from os import path as osp

from tumorage.data.rdt_io import read_rdt_csv
from tumorage.inversion import CROSSING_MODES, AgeTable, DiameterGrid
from tumorage.metrics import calculate_metric
from tumorage.models import build_model
from tumorage.models.rdt_mixture_model import fit_mixture
from tumorage.report import (age_table_pipeline, compare_with_published, model_cdf_curve, query_age, sensitivity_sweep,
                             size_given_age, write_cdf_curve_csv, write_comparison_csv, write_size_given_age_csv)
from tumorage.sim import SimulationConfig, simulate_ensemble, write_ensemble_csv
from tumorage.utils import get_env_info, get_root_logger, get_time_str, make_exp_dirs
from tumorage.utils.errors import (ConfigError, DomainError, EmptyInputError, GrowthOverflowError, IngestError,
                                   InsufficientDataError)
from tumorage.utils.options import (check_rho, default_results_root, dict2str, load_options, validate_options,
                                    write_manifest)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_INGEST = 4

# flag name -> (option group or None, option key)
_SIMULATION_FLAGS = OrderedDict([
    ('seed', (None, 'manual_seed')),
    ('n', ('simulation', 'n_histories')),
    ('v0', ('simulation', 'v0')),
    ('vmax', ('simulation', 'v_max')),
    ('h_days', ('simulation', 'h_days')),
    ('max_steps', ('simulation', 'max_steps')),
    ('rho', ('sampler', 'rho')),
    ('grid', ('inversion', 'grid')),
    ('crossings', ('inversion', 'crossings')),
])


def _positive_float(value):
    try:
        out = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected a number, got {value!r}')
    if not out > 0 or out == float('inf'):
        raise argparse.ArgumentTypeError(f'expected a positive finite number, got {value!r}')
    return out


def _rho(value):
    try:
        return check_rho(value)
    except (ConfigError, ValueError):
        raise argparse.ArgumentTypeError(f'rho must be a number in [0, 1), got {value!r}')


def _float_list(item_type):

    def parse(value):
        parts = [v.strip() for v in value.split(',') if v.strip()]
        if not parts:
            raise argparse.ArgumentTypeError('expected a comma separated list')
        return [item_type(v) for v in parts]

    return parse


def _add_common_args(parser):
    parser.add_argument('-opt', type=str, default=None, help='Path to option YAML file (a manifest.yml works too).')
    parser.add_argument(
        '--force_yml', nargs='+', default=None, help='Force to update yml options. Examples: simulation:max_steps=500')
    parser.add_argument('--out', type=str, default=None, help='Output directory.')
    parser.add_argument('--overwrite', action='store_true', help='Reuse an existing output directory.')
    parser.add_argument('--name', type=str, default=None, help='Run name, used for the default output directory.')
    parser.add_argument('--debug', action='store_true', help='Debug-level logging.')


def _add_simulation_args(parser):
    group = parser.add_argument_group('simulation')
    group.add_argument('--seed', type=int, default=None, help='Master seed. Default: 0.')
    group.add_argument('--n', type=int, default=None, help='Number of histories. Default: 10000.')
    group.add_argument('--v0', type=_positive_float, default=None, help='Initial volume, mL. Default: 0.01.')
    group.add_argument('--vmax', type=_positive_float, default=None, help='Exit volume, mL. Default: 4200.')
    group.add_argument(
        '--h-days', dest='h_days', type=_positive_float, default=None, help='Interval, days. Default: 245.')
    group.add_argument('--max-steps', dest='max_steps', type=int, default=None, help='Step cap per history.')
    group.add_argument('--rho', type=_rho, default=None, help='Serial correlation in [0, 1). Default: 0.')
    group.add_argument(
        '--grid', type=_float_list(_positive_float), default=None, help='Comma separated threshold diameters, cm.')
    group.add_argument('--crossings', choices=CROSSING_MODES, default=None, help='Crossing convention.')
    group.add_argument('--threads', type=int, default=None, help='Worker threads; results do not depend on it.')
    group.add_argument('--progress', action='store_true', help='Show a progress bar.')


def build_parser():
    parser = argparse.ArgumentParser(
        prog='tumorage', description='Estimate the age distribution of a renal tumor from its diameter.')
    subparsers = parser.add_subparsers(dest='command', required=True)

    fit = subparsers.add_parser('fit', help='Fit the RDT mixture to observed reciprocal doubling times.')
    fit.add_argument('input_csv', help='CSV with header "rdt" and one value per line, doublings/year.')
    _add_common_args(fit)

    simulate = subparsers.add_parser('simulate', help='Simulate growth histories and export them as CSV.')
    _add_common_args(simulate)
    _add_simulation_args(simulate)
    simulate.add_argument('--export-n', dest='export_n', type=int, default=None, help='Histories to export.')
    simulate.add_argument(
        '--ages', type=_float_list(float), default=None, help='Ages (years) of the size-given-age table.')

    table = subparsers.add_parser('table', help='Build the table of age percentiles by diameter.')
    _add_common_args(table)
    _add_simulation_args(table)
    table.add_argument('--compare', action='store_true', help='Also compare with the published table.')

    query = subparsers.add_parser('query', help='Age distribution of a tumor of the given diameter(s).')
    query.add_argument(
        'diameters', nargs='*', type=_positive_float, help='Diameter(s), cm. Default: query:diameters of the options.')
    query.add_argument('--table', type=str, default=None, help='table.json written by the table command.')
    _add_common_args(query)
    _add_simulation_args(query)

    sensitivity = subparsers.add_parser('sensitivity', help='Sweep the serial correlation rho.')
    _add_common_args(sensitivity)
    _add_simulation_args(sensitivity)
    sensitivity.add_argument('--rhos', type=_float_list(_rho), default=None, help='Comma separated rhos in [0, 1).')
    return parser


def _simulation_flags_given(args):
    return [flag for flag in _SIMULATION_FLAGS if getattr(args, flag, None) is not None]


def parse_options(args):
    """Merge defaults, the option file, ``--force_yml`` and flags into the option dict of a run."""
    opt = load_options(args.opt, args.force_yml)
    if args.name is not None:
        opt['name'] = args.name
    for flag in _simulation_flags_given(args):
        group, key = _SIMULATION_FLAGS[flag]
        value = getattr(args, flag)
        if group is None:
            opt[key] = value
        else:
            opt[group][key] = value
    if getattr(args, 'threads', None) is not None:
        opt['num_threads'] = args.threads
    if getattr(args, 'rhos', None) is not None:
        opt['sensitivity']['rhos'] = args.rhos
    if getattr(args, 'export_n', None) is not None:
        opt['export']['n_histories'] = args.export_n
    if getattr(args, 'ages', None) is not None:
        opt['export']['ages'] = args.ages

    if args.out is not None:
        opt['path']['results_root'] = args.out
    elif not opt['path'].get('results_root'):
        opt['path']['results_root'] = default_results_root(opt, args.command)
    return validate_options(opt)


def _init_run(opt, args):
    make_exp_dirs(opt, overwrite=args.overwrite)
    log_file = osp.join(opt['path']['results_root'], f"{args.command}_{opt['name']}_{get_time_str()}.log")
    log_level = logging.DEBUG if args.debug else logging.INFO
    logger = get_root_logger(log_level=log_level, log_file=log_file)
    logger.setLevel(log_level)
    logger.info(get_env_info())
    logger.info(dict2str(opt))
    return logger


def _emit(obj):
    print(json.dumps(obj, indent=2))


def cmd_fit(opt, args):
    logger = _init_run(opt, args)
    samples = read_rdt_csv(args.input_csv)
    logger.info(f'Read {len(samples)} RDT values from {args.input_csv}.')
    model = fit_mixture(samples, min_per_side=int(opt['fit']['min_per_side']))
    result = OrderedDict(p_negative=model.p_negative, lambda_pos=model.lambda_pos, lambda_neg=model.lambda_neg)
    for name, metric_opt in opt['fit']['metrics'].items():
        result[name] = calculate_metric(dict(model=model, samples=samples), metric_opt)
    result['n'] = int(len(samples))
    logger.info(f'Fitted {model}.')

    root = opt['path']['results_root']
    with open(osp.join(root, 'fit.json'), 'w') as f:
        json.dump(result, f, indent=2)
        f.write('\n')
    write_cdf_curve_csv(osp.join(root, 'cdf.csv'), model_cdf_curve(model, samples))
    write_manifest(root, opt, 'fit', ['fit.json', 'cdf.csv'])
    _emit(result)
    return EXIT_OK


def cmd_simulate(opt, args):
    _init_run(opt, args)
    model = build_model(opt)
    config = SimulationConfig.from_options(opt)
    ensemble = simulate_ensemble(model, config, num_threads=int(opt['num_threads']), progress=args.progress)

    root = opt['path']['results_root']
    write_ensemble_csv(osp.join(root, 'ensemble.csv'), ensemble, limit=opt['export']['n_histories'])
    rows = size_given_age(ensemble, opt['export']['ages'], config.v_max)
    write_size_given_age_csv(osp.join(root, 'size_given_age.csv'), rows)
    write_manifest(root, opt, 'simulate', ['ensemble.csv', 'size_given_age.csv'])
    return EXIT_OK


def _table_from_options(opt, args):
    model = build_model(opt)
    config = SimulationConfig.from_options(opt)
    grid = DiameterGrid.from_options(opt)
    return age_table_pipeline(
        model,
        config,
        grid,
        crossings=opt['inversion']['crossings'],
        num_threads=int(opt['num_threads']),
        progress=args.progress,
        bucket_factor=float(opt['inversion']['bucket_factor']))


def cmd_table(opt, args):
    logger = _init_run(opt, args)
    table = _table_from_options(opt, args)
    if table.missing_rows:
        logger.warning(f'Rows without crossings: {table.missing_rows}.')

    root = opt['path']['results_root']
    outputs = ['table.csv', 'table.json']
    table.write_csv(osp.join(root, 'table.csv'))
    table.write_json(osp.join(root, 'table.json'), config=opt)
    if args.compare:
        write_comparison_csv(osp.join(root, 'comparison.csv'), compare_with_published(table))
        outputs.append('comparison.csv')
    write_manifest(root, opt, 'table', outputs)
    return EXIT_OK


def cmd_query(opt, args):
    if args.table is not None:
        if _simulation_flags_given(args) or args.opt is not None:
            raise ConfigError('--table cannot be combined with simulation flags or -opt.')
        table = AgeTable.read_json(args.table)
    else:
        _init_run(opt, args)
        table = _table_from_options(opt, args)
    diameters = args.diameters or opt['query']['diameters']
    results = [query_age(table, d).to_dict() for d in diameters]
    _emit(results[0] if len(results) == 1 else results)
    return EXIT_OK


def cmd_sensitivity(opt, args):
    _init_run(opt, args)
    model = build_model(opt)
    config = SimulationConfig.from_options(opt)
    grid = DiameterGrid.from_options(opt)
    report = sensitivity_sweep(
        model,
        config,
        opt['sensitivity']['rhos'],
        grid,
        crossings=opt['inversion']['crossings'],
        num_threads=int(opt['num_threads']),
        progress=args.progress,
        reference_diameters=opt['sensitivity']['reference_diameters'],
        bucket_factor=float(opt['inversion']['bucket_factor']))

    root = opt['path']['results_root']
    report.write_csv(osp.join(root, 'sensitivity.csv'))
    report.write_json(osp.join(root, 'sensitivity.json'), config=opt)
    write_manifest(root, opt, 'sensitivity', ['sensitivity.csv', 'sensitivity.json'])
    return EXIT_OK


COMMANDS = {
    'fit': cmd_fit,
    'simulate': cmd_simulate,
    'table': cmd_table,
    'query': cmd_query,
    'sensitivity': cmd_sensitivity,
}


def main(argv=None):
    """Run the command line interface and return its exit code.

    Exit codes: 0 success, 2 usage or configuration error, 3 domain or
    out-of-range error, 4 data ingestion or fitting error.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    logger = get_root_logger()
    try:
        opt = parse_options(args)
        return COMMANDS[args.command](opt, args)
    except (ConfigError, EmptyInputError) as e:
        logger.error(str(e))
        return EXIT_USAGE
    except (DomainError, GrowthOverflowError) as e:
        logger.error(str(e))
        return EXIT_DOMAIN
    except (IngestError, InsufficientDataError) as e:
        logger.error(str(e))
        return EXIT_INGEST


if __name__ == '__main__':
    sys.exit(main())
