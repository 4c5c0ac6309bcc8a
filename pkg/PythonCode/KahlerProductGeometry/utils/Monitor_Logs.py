'''
Monitor_Logs.py

Description:
This module defines a function MonitorLogs() which reads the log files of a
verification run and reports, for every suite, whether it finished. It is
called by /PythonCode/log_monitor.py.

A run with runtime R writes its logs to path_logs/Verification_R/, one file
per suite: Suite_<suite>_<config>_R.log.

Output of MonitorLogs():
A dataframe with one row per suite log file.
    1. If the last line of the log is the 'Time Elapsed' line, the status is
       "Done" and the elapsed time is parsed.
    2. Otherwise the status is the last logged message: the step being
       executed, or the last step before an error.
    3. Encounter_Error records whether an ERROR line appears anywhere.
The dataframe is saved to path_logs/LogSummary/LogSummary_R.csv.
'''
import logging
import os
import re
import pandas as pd

logger = logging.getLogger(__name__)

LOG_NAME_RE = re.compile(r'^Suite_(?P<suite>[a-z0-9\-]+)_(?P<config>.+)_(?P<runtime>\d{8}_\d{6})\.log$')
# asctime - levelname - message
LINE_RE = re.compile(r'^\S+ \S+ - (?P<level>[A-Z]+) - (?P<message>.*)$')

def _status(lines):
    if not lines:
        return 'Empty log file', None
    match = LINE_RE.match(lines[-1])
    last = match.group('message') if match else lines[-1]
    if last.startswith('Time Elapsed'):
        return 'Done', pd.to_timedelta(last[len('Time Elapsed: '):], errors='coerce')
    return last, None

def MonitorLogs(runtime, paths):
    '''
    param:
        runtime: str. The runtime printed when the run started.
        paths:   dict with 'path_logs'.
    '''
    logpath = os.path.join(paths['path_logs'], 'Verification_%s' % runtime)
    if not os.path.isdir(logpath):
        logger.warning('Did not find log files for runtime %s.' % runtime)
        return None
    rows = []
    for name in sorted(os.listdir(logpath)):
        match = LOG_NAME_RE.match(name)
        if match is None:
            continue
        with open(os.path.join(logpath, name), 'r') as f:
            lines = [x.strip() for x in f.readlines() if x.strip()]
        status, elapsed = _status(lines)
        errored = any(' - ERROR - ' in x for x in lines)
        rows.append({'Suite': match.group('suite'), 'Config': match.group('config'),
                     'Status': status, 'Time': elapsed,
                     'Encounter_Error': 'Encounter error' if errored else 'Did not encounter error'})
    df = pd.DataFrame(rows, columns=['Suite', 'Config', 'Status', 'Time', 'Encounter_Error'])

    summary_dir = os.path.join(paths['path_logs'], 'LogSummary')
    if not os.path.exists(summary_dir):
        os.makedirs(summary_dir)
    df.to_csv(os.path.join(summary_dir, 'LogSummary_%s.csv' % runtime), index=False)

    done = df[df['Status'] == 'Done']
    logger.info('Runtime %s: %d suite logs, %d done, %d with errors'
                % (runtime, df.shape[0], done.shape[0], (df['Encounter_Error'] == 'Encounter error').sum()))
    return df
