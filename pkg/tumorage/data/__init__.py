import importlib
from os import path as osp

from tumorage.utils import get_root_logger, scandir
from tumorage.utils.registry import SAMPLER_REGISTRY

__all__ = ['build_sampler', 'sampler_type']

# automatically scan and import sampler modules for registry
# scan all the files under the data folder with '_sampler' in file names
data_folder = osp.dirname(osp.abspath(__file__))
sampler_filenames = [osp.splitext(osp.basename(v))[0] for v in scandir(data_folder) if v.endswith('_sampler.py')]
# import all the sampler modules
_sampler_modules = [importlib.import_module(f'tumorage.data.{file_name}') for file_name in sampler_filenames]


def sampler_type(sampler_opt):
    """Name of the sampler class selected by a ``sampler`` option dict.

    An explicit ``type`` wins; otherwise a positive ``rho`` selects the
    Gaussian-copula sampler.
    """
    if sampler_opt.get('type'):
        return sampler_opt['type']
    return 'CopulaRdtSampler' if float(sampler_opt.get('rho', 0.0)) > 0 else 'IidRdtSampler'


def build_sampler(model, sampler_opt, rng):
    """Build an RDT sampler.

    Args:
        model (RdtMixture): Marginal distribution of the RDT values.
        sampler_opt (dict): Sampler options, e.g. ``{'rho': 0.4}``.
        rng (numpy.random.Generator): Random source owned by the sampler.
    """
    name = sampler_type(sampler_opt)
    kwargs = {k: v for k, v in sampler_opt.items() if k != 'type'}
    if name == 'IidRdtSampler':
        kwargs.pop('rho', None)
    sampler = SAMPLER_REGISTRY.get(name)(model, rng, **kwargs)
    get_root_logger().debug(f'Sampler [{sampler.__class__.__name__}] is built.')
    return sampler
