from ._hermprod import (
    ConfigError,
    DomainError,
    EnsembleParams,
    NumericalError,
    fuss_catalan_density,
    fuss_catalan_moment,
    global_density,
    global_ks,
    hard_kernel,
    kernel,
    map_polynomial_ensemble,
    product_jpdf,
    rank_one_chain,
    sample_spectra,
    stieltjes_density,
    support_edge,
    theorem1_pdf,
    verify,
    weight,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "EnsembleParams",
    "NumericalError",
    "fuss_catalan_density",
    "fuss_catalan_moment",
    "global_density",
    "global_ks",
    "hard_kernel",
    "kernel",
    "map_polynomial_ensemble",
    "product_jpdf",
    "rank_one_chain",
    "sample_spectra",
    "stieltjes_density",
    "support_edge",
    "theorem1_pdf",
    "verify",
    "weight",
]
