from .errors import (ConfigError, DomainError, EmptyInputError, GrowthOverflowError, IngestError,
                     InsufficientDataError, OutOfRangeError, TumorAgeError)
from .geometry import diameter_to_volume, volume_to_diameter
from .logger import AvgTimer, get_env_info, get_root_logger
from .misc import get_time_str, make_exp_dirs, mkdir_and_rename, scandir, sha256_file
from .options import yaml_load

__all__ = [
    # errors.py
    'TumorAgeError',
    'DomainError',
    'OutOfRangeError',
    'InsufficientDataError',
    'ConfigError',
    'IngestError',
    'EmptyInputError',
    'GrowthOverflowError',
    # geometry.py
    'diameter_to_volume',
    'volume_to_diameter',
    # logger.py
    'AvgTimer',
    'get_root_logger',
    'get_env_info',
    # misc.py
    'get_time_str',
    'mkdir_and_rename',
    'make_exp_dirs',
    'scandir',
    'sha256_file',
    # options
    'yaml_load'
]
