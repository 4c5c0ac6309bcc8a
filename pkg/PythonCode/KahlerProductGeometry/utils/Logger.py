'''
Logger.py

Defines the logger object used by the drivers.

getLogger() attaches a FileHandler to a named logger. LoggerWriter adapts a
logger to a file-like object; it is used to send numpy floating-point warnings
into the log file.
'''

import logging
import os
import numpy as np

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'

class LoggerWriter(object):
    def __init__(self, logger, level = logging.WARNING):
        self.logger = logger
        self.level = level

    def write(self, message):
        for line in message.rstrip().splitlines():
            self.logger.log(self.level, line.rstrip())

    def flush(self):
        pass

def getLogger(logpath, logfile, name):
    logger = logging.getLogger(name)
    logger.setLevel(logging.INFO)
    # a second call with the same name replaces the handlers
    for old in list(logger.handlers):
        logger.removeHandler(old)
        old.close()
    if not os.path.exists(logpath):
        os.makedirs(logpath)
    formatter = logging.Formatter(LOG_FORMAT)
    handler = logging.FileHandler(os.path.join(logpath, logfile))
    handler.setLevel(logging.INFO)
    handler.setFormatter(formatter)
    logger.addHandler(handler)
    return logger

def log_numpy_warnings(logger):
    '''Route numpy floating-point warnings into logger; returns the previous settings.'''
    previous = np.seterr(all='log')
    np.seterrcall(LoggerWriter(logger, logging.WARNING))
    return previous

def close_logger(logger):
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()
