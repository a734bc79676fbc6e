import math

import numpy as np


class ConfigurationSampler(object):
    r"""Draws joint configurations uniformly from [low, high)^n.

    Samples are range-scaled unit draws of numpy's default generator (PCG64), low + (high - low) * u,
    so a seed always gives the same sequence of configurations, one row per sample.

    Arguments:
        n (int): number of joints
        num_samples (int): number of configurations to draw
        low, high (float): sampling interval, default [-pi, pi)
        seed (int): seed of the generator, no seed if None
    """

    def __init__(self, n, num_samples, low=-math.pi, high=math.pi, seed=None):
        if not isinstance(num_samples, int) or isinstance(num_samples, bool) or num_samples <= 0:
            raise ValueError("num_samples should be a positive integer "
                             "value, but got num_samples={}".format(num_samples))
        if not isinstance(n, int) or n < 0:
            raise ValueError("n should be a nonnegative integer, but got n={}".format(n))
        if not high > low:
            raise ValueError("sampling interval must be nonempty, got [{}, {}]".format(low, high))
        self.n = n
        self.num_samples = num_samples
        self.low = float(low)
        self.high = float(high)
        self.seed = seed

    def sample(self):
        rng = np.random.default_rng(self.seed)
        return self.low + (self.high - self.low) * rng.random((self.num_samples, self.n))

    def __iter__(self):
        return iter(self.sample())

    def __len__(self):
        return self.num_samples
