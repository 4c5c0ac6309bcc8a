'''
verification_main.py

Main Python script to run the verification suites of KahlerProductGeometry
on a geometry config.

Usage:
    python verification_main.py --config s2xh2.json --suite conformal-flatness
    python verification_main.py --config h2xh2.json --suite stability-probe --seed 3 --workers 4 --out probe.json
    python verification_main.py --config plane2.json --suite all --format csv --out plane2.csv
    python verification_main.py --list-suites

Instructions:
    1. Pick a config. Bare names (e.g. s2xh2 or s2xh2.json) resolve to the built-in
       configs in KahlerProductGeometry/Configs/. Use config_validation.py to
       check a new config before running it.
    2. Pick one suite, a comma-separated list, or 'all'. --list-suites prints
       the registry.
    3. Overrides: --seed, --grid-step and --tol replace the suite parameters of
       the same meaning; --set key=value replaces any suite parameter (values
       are decoded as JSON when possible, e.g. --set n=50 --set family='"separable-bump"').
    4. Outputs (--collect DIR combines the JSON reports of DIR into DIR/ReportSummary.csv):
       (1) A summary table of all checks on standard output.
       (2) --out PATH: the report in --format json (default), csv (one row per
           check, tables such as the curve samples or the second-variation
           values next to it as PATH_<table>.csv) or table (the text table).
       (3) Log files in --logs/Verification_<runtime>/, one per suite, and the
           run arguments in --logs/TechnicalSpecifications/<runtime>.txt.
           log_monitor.py reads these logs.
    5. Exit code: 0 when every check passes, 1 when a check fails or a suite
       raises a geometry error, 2 for config errors, 3 for I/O errors.
       With --no-timestamp the JSON report of a run is byte-identical for
       identical config, suite and seed.
'''
###################################################################################
################################## IMPORT MODULES #################################
###################################################################################

import argparse
import datetime
import json
import os
import pprint
import sys
import traceback
import numpy as np
import pandas as pd

from KahlerProductGeometry.Verification_Suites import SUITES, describe_suites, suite_names, \
    suite_parameters, run_suite, checks_frame
from KahlerProductGeometry.utils.Config import load_config
from KahlerProductGeometry.utils.Validate_Config import ValidateConfig
from KahlerProductGeometry.utils.Errors import ConfigError, GeometryError
from KahlerProductGeometry.utils.Logger import getLogger, log_numpy_warnings, close_logger
from KahlerProductGeometry.utils.Monitor_Logs import MonitorLogs
from KahlerProductGeometry.utils.Collect_Statistics import collect_reports

###################################################################################
################################## SET PARAMETERS #################################
###################################################################################
###### Default path to log file directory
path_logs = 'logs'
###### Exit codes
EXIT_PASS, EXIT_FAIL, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3
SUMMARY_COLUMNS = ['suite', 'name', 'max_residual', 'tolerance', 'pass']

###################################################################################
###################################################################################
# Warning: Please do not modify the script after this line unless
#          you fully understand the code and know what you are doing
###################################################################################
###################################################################################

def build_parser():
    parser = argparse.ArgumentParser(description='Verification suites for product Kahler 4-manifolds.')
    parser.add_argument('--config', help='Config path or name of a built-in config.')
    parser.add_argument('--suite', default='all', help="Suite name, comma-separated names or 'all'.")
    parser.add_argument('--out', help='Report output path.')
    parser.add_argument('--seed', type=int, help='Seed of all random samples.')
    parser.add_argument('--grid-step', type=float, help='Replaces the curve and grid steps of the fixtures.')
    parser.add_argument('--tol', type=float, help='Replaces the main tolerance of the suites.')
    parser.add_argument('--set', action='append', default=[], metavar='KEY=VALUE',
                        help='Override any suite parameter; repeatable.')
    parser.add_argument('--workers', type=int, help='Processes for the stability probe.')
    parser.add_argument('--format', choices=['json', 'csv', 'table'], default='json')
    parser.add_argument('--no-timestamp', action='store_true', help='Leave the runtime out of the report.')
    parser.add_argument('--logs', default=path_logs, help='Log directory.')
    parser.add_argument('--list-suites', action='store_true', help='Print the suite registry and exit.')
    parser.add_argument('--collect', metavar='DIR',
                        help='Combine the JSON reports in DIR into DIR/ReportSummary.csv and exit.')
    return parser


def list_suites():
    width = max(len(name) for name in suite_names())
    return '\n'.join('%s  %s' % (name.ljust(width), text) for name, text in describe_suites())


def parse_overrides(args):
    '''Command-line overrides as a dict; raises ConfigError on malformed --set items.'''
    overrides = {'seed': args.seed, 'grid_step': args.grid_step, 'tol': args.tol, 'workers': args.workers}
    for item in args.set:
        key, sep, text = item.partition('=')
        if not sep or not key:
            raise ConfigError('malformed --set %r, expected key=value' % item)
        try:
            overrides[key.strip()] = json.loads(text)
        except ValueError:
            overrides[key.strip()] = text
    return {k: v for k, v in overrides.items() if v is not None}


def resolve_suites(text):
    if text == 'all':
        return suite_names()
    names = [s.strip() for s in text.split(',') if s.strip()]
    unknown = [s for s in names if s not in SUITES]
    if unknown or not names:
        raise ConfigError('unknown suite %s; use --list-suites' % ', '.join(unknown or [repr(text)]))
    return names


def _json_default(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError('not JSON serializable: %r' % type(value))


###################################################################################
################################### MAIN PROGRAM ##################################
###################################################################################
# Define the per-suite runner
def run_one(runtime, cfg, suite, params, paths):
    # Initialize logger
    logpath = os.path.join(paths['path_logs'], 'Verification_%s' % runtime)
    logfile = 'Suite_%s_%s_%s.log' % (suite, cfg.name, runtime)
    logger = getLogger(logpath, logfile, 'Suite_%s_%s' % (suite, cfg.name))
    previous = log_numpy_warnings(logger)
    timer_st = datetime.datetime.now()
    logger.info('Processing: %s on %s' % (suite, cfg.name))
    logger.info('Timer Start: %s' % str(timer_st))
    logger.info('Process ID: %s' % os.getpid())

    report = {'suite': suite, 'config': cfg.name, 'parameters': params}
    code = run_process(logger, report, run_suite, suite, cfg, params, logger)

    timer_end = datetime.datetime.now()
    logger.info('Complete.')
    logger.info('Timer End: %s' % str(timer_end))
    logger.info('Time Elapsed: %s' % str(timer_end - timer_st))
    np.seterr(**previous)
    close_logger(logger)
    return report, code

# Define the process runner
def run_process(logger, report, process, *args):
    '''Run process, fill report and return the exit code of this suite.'''
    try:
        result = process(*args)
    except ConfigError as e:
        logger.error('Failed. Config error: %s' % e)
        report.update({'checks': [], 'details': {}, 'pass': False, 'error': str(e)})
        return EXIT_CONFIG
    except GeometryError as e:
        logger.error('Failed. Error: %s' % e)
        logger.error(traceback.format_exc())
        report.update({'checks': [], 'details': {}, 'pass': False, 'error': '%s: %s' % (type(e).__name__, e)})
        return EXIT_FAIL
    except OSError as e:
        logger.error('Failed. I/O error: %s' % e)
        report.update({'checks': [], 'details': {}, 'pass': False, 'error': str(e)})
        return EXIT_IO
    except Exception as e:
        logger.error('Failed. Unexpected error: %s' % e)
        logger.error(traceback.format_exc())
        report.update({'checks': [], 'details': {}, 'pass': False, 'error': '%s: %s' % (type(e).__name__, e)})
        return EXIT_FAIL
    report.update({'checks': result.checks, 'details': result.details, 'pass': result.passed})
    report['_tables'] = result.tables
    return EXIT_PASS if result.passed else EXIT_FAIL


def summary_table(reports):
    rows = []
    for r in reports:
        if r.get('error'):
            rows.append({'suite': r['suite'], 'name': 'ERROR: %s' % r['error'], 'max_residual': None,
                         'tolerance': None, 'pass': False})
        for check in r['checks']:
            rows.append(dict(check, suite=r['suite']))
    return pd.DataFrame(rows, columns=SUMMARY_COLUMNS)


def write_outputs(out, fmt, document, reports, table):
    directory = os.path.dirname(os.path.abspath(out))
    if not os.path.exists(directory):
        os.makedirs(directory)
    if fmt == 'json':
        with open(out, 'w') as f:
            json.dump(document, f, sort_keys=True, indent=2, default=_json_default)
            f.write('\n')
    elif fmt == 'table':
        with open(out, 'w') as f:
            f.write(table.to_string(index=False) + '\n')
    else:
        frames = []
        for r in reports:
            frame = checks_frame(r['checks'])
            frame.insert(0, 'suite', r['suite'])
            frames.append(frame)
        pd.concat(frames, ignore_index=True).to_csv(out, index=False)
        stem = os.path.splitext(out)[0]
        for r in reports:
            for name, frame in r['tables'].items():
                frame.to_csv('%s_%s_%s.csv' % (stem, r['suite'], name), index=False, float_format='%.17g')


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.list_suites:
        print(list_suites())
        return EXIT_PASS
    if args.collect:
        try:
            summary = collect_reports(args.collect, os.path.join(args.collect, 'ReportSummary.csv'))
        except OSError as e:
            print('I/O error: %s' % e, file=sys.stderr)
            return EXIT_IO
        print(summary.to_string(index=False))
        return EXIT_PASS
    if not args.config:
        print('error: --config is required', file=sys.stderr)
        return EXIT_CONFIG

    # Get runtime information
    now = datetime.datetime.now()
    runtime = '%04d%02d%02d_%02d%02d%02d' % (now.year, now.month, now.day, now.hour, now.minute, now.second)
    paths = {'path_logs': args.logs}

    ###################################################################################
    # Organize input parameters
    try:
        cfg = load_config(args.config)
        if ValidateConfig(cfg).validate():
            raise ConfigError('config %s fails validation' % cfg.name)
        K = cfg.kahler()
        suites = resolve_suites(args.suite)
        overrides = parse_overrides(args)
        params = {suite: suite_parameters(suite, cfg, overrides) for suite in suites}
    except (ConfigError, GeometryError) as e:
        print('Config error: %s' % e, file=sys.stderr)
        return EXIT_CONFIG

    ## Write args and paths to a txt file for retaining parameters of runs
    try:
        technical_arg_log = os.path.join(args.logs, 'TechnicalSpecifications')
        if not os.path.exists(technical_arg_log):
            os.makedirs(technical_arg_log)
        with open(os.path.join(technical_arg_log, '%s.txt' % runtime), 'w') as f:
            print('Running: Verification', file=f)
            print('Arguments specified for runtime %s:' % runtime, file=f)
            pprint.pprint(vars(args), f)
            print('Suite parameters for runtime %s:' % runtime, file=f)
            pprint.pprint(params, f)
            print('Paths specified for runtime %s:' % runtime, file=f)
            pprint.pprint(paths, f)
    except OSError as e:
        print('I/O error: %s' % e, file=sys.stderr)
        return EXIT_IO

    ###################################################################################
    # Run the suites
    reports, codes = [], []
    for suite in suites:
        report, code = run_one(runtime, cfg, suite, params[suite], paths)
        reports.append(report)
        codes.append(code)
    for r in reports:
        r['tables'] = r.pop('_tables', {})

    # Monitor logs to check that every suite finished
    MonitorLogs(runtime, paths)

    ###################################################################################
    # Outputs
    table = summary_table(reports)
    print('Config: %s (%s)' % (cfg.name, K.name))
    print(table.to_string(index=False))
    document = {'config': cfg.name, 'suites': [{k: v for k, v in r.items() if k != 'tables'} for r in reports],
                'pass': all(c == EXIT_PASS for c in codes)}
    if not args.no_timestamp:
        document['runtime'] = runtime
        for r in document['suites']:
            r['runtime'] = runtime
    if args.out:
        try:
            write_outputs(args.out, args.format, document, reports, table)
        except OSError as e:
            print('I/O error: %s' % e, file=sys.stderr)
            return EXIT_IO

    if EXIT_CONFIG in codes:
        return EXIT_CONFIG
    if EXIT_IO in codes:
        return EXIT_IO
    return EXIT_FAIL if EXIT_FAIL in codes else EXIT_PASS

###################################################################################
#################################### EXECUTION ####################################
###################################################################################

if __name__ == '__main__':
    sys.exit(main())
