'''
config_validation.py

This script checks whether geometry configs meet the requirements of the
package: referenced names resolve, eps is +1 or -1, steps are positive,
expressions parse and conformal factors are positive on their domains. We
recommend validating a new config before running verification_main.py on it.

Instructions:
    1. List the configs to check in testing_configs (paths, or names of
       built-in configs), or pass them on the command line:
           python config_validation.py my_geometry.json s2xh2.json
    2. Run the script. Failed tests are printed with the reason.
'''
###################################################################################
### Load modules
import sys

from KahlerProductGeometry.utils.Config import load_config, builtin_configs
from KahlerProductGeometry.utils.Validate_Config import ValidateConfig
from KahlerProductGeometry.utils.Errors import ConfigError
###################################################################################
### Specify the configs to be checked
# Each item is a path to a JSON config or the file name of a built-in config,
# e.g. ['s2xh2.json', '/path/to/my_geometry.json']. By default all built-in
# configs are checked.
testing_configs = ['%s.json' % name for name in builtin_configs()]
###################################################################################
### Config Validation
def validate_configs(configs):
    '''Return the list of (config, messages) that fail validation.'''
    failed = []
    for path in configs:
        try:
            test = ValidateConfig(load_config(path))
        except ConfigError as e:
            failed.append((path, [str(e)]))
            continue
        if test.validate():
            failed.append((path, test.messages))
    return failed

if __name__ == '__main__':
    configs = sys.argv[1:] or testing_configs
    failed = validate_configs(configs)
    for path, messages in failed:
        print('%s:' % path)
        for message in messages:
            print('    - %s' % message)
    if failed:
        print('Configs failed to pass some validation tests. Please check the config requirements and be careful to proceed.')
        sys.exit(2)
    else:
        print('Configs validated.')
