import logging
import time

initialized_logger = {}


class AvgTimer():
    """Wall-clock timer averaging over the recorded laps."""

    def __init__(self):
        self.current_time = 0
        self.total_time = 0
        self.count = 0
        self.avg_time = 0
        self.start()

    def start(self):
        self.start_time = self.tic = time.time()

    def record(self):
        self.count += 1
        self.toc = time.time()
        self.current_time = self.toc - self.tic
        self.total_time += self.current_time
        self.avg_time = self.total_time / self.count
        self.tic = time.time()

    def get_current_time(self):
        return self.current_time

    def get_avg_time(self):
        return self.avg_time

    def get_total_time(self):
        return time.time() - self.start_time


def get_root_logger(logger_name='tumorage', log_level=logging.INFO, log_file=None):
    """Get the root logger.

    The logger will be initialized if it has not been initialized. By default a
    StreamHandler will be added. If `log_file` is specified, a FileHandler will
    also be added. A later call with a new `log_file` replaces the
    FileHandler, so each run directory gets its own log.

    Args:
        logger_name (str): root logger name. Default: 'tumorage'.
        log_level (int): The root logger level. Default: logging.INFO.
        log_file (str | None): The log filename. If specified, a FileHandler
            will be added to the root logger.

    Returns:
        logging.Logger: The root logger.
    """
    logger = logging.getLogger(logger_name)
    format_str = '%(asctime)s %(levelname)s: %(message)s'
    if logger_name not in initialized_logger:
        stream_handler = logging.StreamHandler()
        stream_handler.setFormatter(logging.Formatter(format_str))
        logger.addHandler(stream_handler)
        logger.propagate = False
        logger.setLevel(log_level)
        initialized_logger[logger_name] = set()

    if log_file is not None and log_file not in initialized_logger[logger_name]:
        # one run, one log file
        for handler in [h for h in logger.handlers if isinstance(h, logging.FileHandler)]:
            logger.removeHandler(handler)
            handler.close()
        file_handler = logging.FileHandler(log_file, 'w')
        file_handler.setFormatter(logging.Formatter(format_str))
        file_handler.setLevel(log_level)
        logger.addHandler(file_handler)
        initialized_logger[logger_name].add(log_file)
    return logger


def get_env_info():
    """Get environment information.

    Currently, only log the software versions.
    """
    import numpy
    import scipy

    from tumorage.version import __version__
    msg = ('\nVersion Information: '
           f'\n\ttumorage: {__version__}'
           f'\n\tNumPy: {numpy.__version__}'
           f'\n\tSciPy: {scipy.__version__}')
    return msg
