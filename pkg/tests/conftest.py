"""Session fixtures shared across the suite.

The 112-bit context, the scalar oracle, and one proxy group (manager,
verification key, credential) are expensive to build, so they are
created once per session.  Tests that need fresh randomness fork
labelled streams from the context instead of mutating shared state.
"""

import pytest

from proxitrace import gsig_join, gsig_setup, setup_params
from proxitrace.oracle import KnownExponentOracle


@pytest.fixture(scope="session")
def ctx():
    return setup_params(112, b"test-suite")


@pytest.fixture(scope="session")
def oracle(ctx):
    return KnownExponentOracle(ctx.order)


@pytest.fixture(scope="session")
def proxy_group(ctx):
    gm, vk = gsig_setup(ctx, ctx.rng(b"fixture|group-manager"))
    cred = gsig_join(gm, ctx, ctx.rng(b"fixture|proxy-credential"))
    vk.precomputed_tables()  # warm the Miller tables once for the session
    return gm, vk, cred
