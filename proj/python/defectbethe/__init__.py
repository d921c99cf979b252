from ._core import *  # noqa: F401,F403
from ._core import Error, ModelParameters, Regime

RATIONAL = ModelParameters.rational()


def repulsive(mu):
    return ModelParameters.trigonometric(mu, Regime.Repulsive)


def attractive(mu):
    return ModelParameters.trigonometric(mu, Regime.Attractive)
