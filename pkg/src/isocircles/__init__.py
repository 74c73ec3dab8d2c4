"""
Exact arithmetic for surfaces that carry two parabolas or two isotropic
circles through each point: bivariate polynomials, the cylinder model of
isotropic space, bilinear-fractional top views and circle envelopes.
"""
__version__ = "0.1.0"
