"""Causal vector autoregression: python bindings over the C++ core."""

from _cvarpy import (  # noqa: F401
    covsel,
    fit,
    fit_restricted,
    order_selection,
    partial_correlations,
    simulate,
)
