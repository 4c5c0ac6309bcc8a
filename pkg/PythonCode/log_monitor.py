'''
log_monitor.py

Script to monitor the progress of a verification run.
The log monitor reads the log files of a run and reports, for every suite,
whether it finished, its last step and whether an error was logged. Users can
run it while verification_main.py is still running, or afterwards to confirm
that every suite completed.

Please do not remove the log files before a run is finished because the
monitor relies on them.

Instructions:
    1. Specify runtime, the string printed by verification_main.py (also the
       name of the TechnicalSpecifications file of the run), or pass it on the
       command line: python log_monitor.py 20240101_120000 [path_logs]
    2. Set path_logs to the --logs directory of the run.
    3. Run this file interactively or in a console.
'''
###################################################################################
import sys

from KahlerProductGeometry.utils.Monitor_Logs import MonitorLogs

###################################################################################
###### Set parameters
runtime = 'YOUR_RUNTIME'
path_logs = 'logs'

###################################################################################
###### Monitor log files
if __name__ == '__main__':
    if len(sys.argv) > 1:
        runtime = sys.argv[1]
    if len(sys.argv) > 2:
        path_logs = sys.argv[2]
    paths = {'path_logs': path_logs}
    # A log summary file will be automatically saved to paths['path_logs']+f'/LogSummary/LogSummary_{runtime}.csv'
    logs = MonitorLogs(runtime, paths)
    if logs is None:
        print('No logs found for runtime %s in %s' % (runtime, path_logs))
    else:
        print(logs.to_string(index=False))
