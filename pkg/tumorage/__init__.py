# flake8: noqa
from .data import *
from .inversion import *
from .metrics import *
from .models import *
from .models.rdt_mixture_model import RdtMixture, default_model, fit_mixture
from .report import *
from .sim import *
from .utils import *
from .version import __gitsha__, __version__
