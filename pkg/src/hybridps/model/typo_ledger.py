"""Known defects in the printed closed forms and how each exponent resolves them.

Each entry is settled by two independent checks: the operator-algebra
derivation in :mod:`hybridps.model.exponents` (``derive_*``) and the
truncated Fock-space oracle.  ``tests/test_model.py`` asserts every
``resolution`` below.
"""

TYPO_LEDGER = (
    {
        "exponent": "Z1",
        "printed": "closing parenthesis of the exponent is missing",
        "resolution": "parenthesis closes after the final beta term; no effect on content",
    },
    {
        "exponent": "Z1",
        "printed": "embedded detection block labelled as the T=1 case, with st*(1-tau)*sinh^2 g",
        "resolution": "the printed (1-tau)*sinh^2 g is correct inside Z1; the extra tau*sinh^2 g "
        "comes from the t*s*y6*conj(y6) term, so the sum equals the T=1 detection value sinh^2 g",
    },
    {
        "exponent": "Z1",
        "printed": "c couples to y2 in quadratic terms but to y1 in the alpha-linear term",
        "resolution": "intentional: c and p generate a^dag, d and h generate a; the reference "
        "transcription equals the derived exponent coefficient by coefficient",
    },
    {
        "exponent": "Z2",
        "printed": "Z2 = e^{Z0 + ...}",
        "resolution": "Z2 is the exponent itself (the argument of e); matches the derivation exactly",
    },
    {
        "exponent": "Z2",
        "printed": "blocks use derivative orders (x:2, y:1) with prefactor t for <dO^dag n_a O>",
        "resolution": "exact: a^dag (a^dag a) = a^dag^2 a is already normal ordered",
    },
    {
        "exponent": "Z3",
        "printed": "derivative list d lambda4^l3 d lambda2^l4",
        "resolution": "read as d lambda3^l3 d lambda4^l4 (lambda3, lambda4 generate b^dag, b)",
    },
    {
        "exponent": "Z3",
        "printed": "f11 used but never defined",
        "resolution": "f11 = cosh g, the mean of b per unit beta after the OPA",
    },
    {
        "exponent": "Z3",
        "printed": "embedded detection block written with eta",
        "resolution": "the internal state passes the T-loss splitter, so the block uses T; "
        "the reference mode keeps eta and differs whenever T != eta",
    },
)
