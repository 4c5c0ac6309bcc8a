'''
Dtypes.py

Pandas data types for the CSV files written by the package.
'''

## Curve samples (Curve.to_csv)
dtypes_curve = {
      's':'float64', 'x':'float64', 'y':'float64',
      'v1':'float64', 'v2':'float64', 'k':'float64'}

## Immersion nodes (Immersion.to_csv)
dtypes_immersion = {
      's':'float64', 't':'float64',
      'x1':'float64', 'y1':'float64', 'x2':'float64', 'y2':'float64'}

## Second-variation values (SecondVariationReport.to_csv)
dtypes_variation = {
      'test_function_id':'int64', 'family':'O', 'value':'float64'}

## One row per check in a collected report summary (Collect_Statistics.collect_reports)
dtypes_report_summary = {
      'Runtime':'O', 'Config':'O', 'Suite':'O', 'Check':'O',
      'MaxResidual':'float64', 'Tolerance':'float64', 'Pass':'bool',
      'NodeOfMax':'O'}
