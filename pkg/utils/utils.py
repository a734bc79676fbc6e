from datetime import datetime
import logging
import os
import sys

import numpy as np

from utils.errors import ParseError


def setup_default_logging(log_dir=None, default_level=logging.INFO, name='screwdh',
                          format="%(asctime)s - %(levelname)s - %(name)s -   %(message)s"):
    """
    Console logging for the screwdh loggers, plus a time-stamped log file under log_dir when given.
    A later call in the same process applies its level and log_dir to the existing handlers.
    Returns the logger and the time stamp used for the file name.
    """
    logger = logging.getLogger(name)
    logger.setLevel(default_level)
    time_stamp = time_str()
    formatter = logging.Formatter(format, datefmt="%m/%d/%Y %H:%M:%S")
    # to avoid double printing when the launcher is called more than once in a process
    if not logger.handlers:
        console_handler = logging.StreamHandler(sys.stdout)
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)
    for handler in list(logger.handlers):
        if isinstance(handler, logging.FileHandler):
            logger.removeHandler(handler)
            handler.close()
        else:
            handler.setLevel(default_level)
    if log_dir is not None:
        os.makedirs(log_dir, exist_ok=True)
        file_handler = logging.FileHandler(os.path.join(log_dir, f'{time_stamp}_screwdh.log'))
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)
    return logger, time_stamp


def error_summary(records):
    """max / mean of every error column of a records frame (index column excluded)"""
    stats = records.drop(columns='index', errors='ignore').astype(float).agg(['max', 'mean'])
    return {col: {'max': float(stats.loc['max', col]), 'mean': float(stats.loc['mean', col])}
            for col in stats.columns}


def parse_joint_values(text):
    """'0.1, -0.2,0.3' -> array([0.1, -0.2, 0.3]); empty string for a model without joints"""
    text = text.strip()
    if not text:
        return np.zeros(0)
    try:
        q = np.array([float(x) for x in text.split(',')])
    except ValueError as e:
        raise ParseError(f'joint values must be comma separated numbers: {e}', field='--q')
    if not np.all(np.isfinite(q)):
        raise ParseError(f'joint values must be finite, got {text}', field='--q')
    return q


def time_str(fmt=None):
    if fmt is None:
        fmt = '%Y-%m-%d_%H:%M:%S'
    return datetime.today().strftime(fmt)
