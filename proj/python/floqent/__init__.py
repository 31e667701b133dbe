"""Floquet quasi-energy spectra and entanglement resonances of driven qubits."""

from ._floqent import (  # noqa: F401
    FloquetSpectrum,
    SingleQubitParams,
    __version__,
    concurrence,
    corridor_mask,
    degeneracy_deviation,
    dicke_state,
    fold_to_zone,
    kummer_1f1,
    landau_zener_entries,
    mu_bessel,
    mu_delta_kick,
    mu_numeric,
    mu_rwa,
    mu_sawtooth,
    parity_selection,
    run_sweep,
    solve,
    three_tangle,
    truncation_rule,
)
