'''
Collect_Statistics.py

Description:
Every suite run writes one JSON report. collect_reports combines the reports
found in a directory into a single csv with one row per check, so that runs
over several configs and suites can be compared in one table.
'''
import glob
import json
import logging
import os
import pandas as pd

from .Dtypes import dtypes_report_summary

logger = logging.getLogger(__name__)

def report_rows(report):
    '''Flatten a run document (or a single suite report) into one dict per check.'''
    if 'suites' in report:
        rows = []
        for suite_report in report['suites']:
            rows.extend(report_rows(dict(suite_report, runtime=suite_report.get('runtime', report.get('runtime')))))
        return rows
    rows = []
    for check in report.get('checks', []):
        node = check.get('node_of_max')
        rows.append({
            'Runtime': report.get('runtime'),
            'Config': report.get('config'),
            'Suite': report.get('suite'),
            'Check': check.get('name'),
            'MaxResidual': check.get('max_residual'),
            'Tolerance': check.get('tolerance'),
            'Pass': bool(check.get('pass')),
            'NodeOfMax': None if node is None else json.dumps(node)})
    return rows

def collect_reports(path_reports, outfile=None):
    '''
    Combine the JSON reports in path_reports into one DataFrame.

    param:
        path_reports: str. Directory searched for *.json reports.
        outfile:      str or None. If given, the summary is also written there as csv.
    '''
    files = sorted(glob.glob(os.path.join(path_reports, '*.json')))
    rows = []
    skipped = []
    for f in files:
        try:
            with open(f, 'r') as fh:
                rows.extend(report_rows(json.load(fh)))
        except (OSError, ValueError):
            skipped.append(f)
    combined = pd.DataFrame(rows, columns=list(dtypes_report_summary))
    combined = combined.astype({k: v for k, v in dtypes_report_summary.items() if v != 'O'})
    if outfile is not None:
        combined.to_csv(outfile, index=False)
        logger.info('Saved report summary of %d files to %s' % (len(files) - len(skipped), outfile))
    # unreadable files are reported but do not stop the collection
    if skipped:
        logger.warning('Number of unreadable report files: %s' % len(skipped))
    return combined
