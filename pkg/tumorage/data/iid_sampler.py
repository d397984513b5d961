from tumorage.utils.registry import SAMPLER_REGISTRY


@SAMPLER_REGISTRY.register()
class IidRdtSampler():
    """Independent RDT draws, one per growth interval.

    Args:
        model (RdtMixture): RDT distribution.
        rng (numpy.random.Generator): Random source.
    """

    def __init__(self, model, rng):
        self.model = model
        self.rng = rng

    def draw(self, n):
        """Return the next ``n`` RDT values."""
        return self.model.sample(self.rng, n)
