"""Pairing-based toolkit for proxy-mediated proximity tracing.

Layers, bottom up: pairing context (groups, Tate pairing, hashing,
codecs), constant-size structure-preserving signatures, mixed-group
signatures, witness-indistinguishable proofs for pairing-product
equations, proxy group signatures, the tracing protocol itself, and a
scenario simulator with a benchmark harness and CLI.
"""

from .pairing import GtElement, MillerTable, PairingContext, setup_params
from .groups import GroupElement
from .rng import DeterministicRng
from .oracle import KnownExponentOracle
from .csig import (CsigPublicKey, CsigSecretKey, CsigSignature, Orientation,
                   csig_keygen, csig_sign, csig_verify)
from .xsig import (XsigKeyPair, XsigPublicKey, XsigSignature, xsig_keygen,
                   xsig_sign, xsig_verify)
from .niwi import (NiwiCrs, NiwiProof, NiwiWitness, PairingProductEquation,
                   crs_gen, equation_holds, niwi_prove, niwi_verify)
from .gsig import (X_VARS, Y_VARS, GroupManagerKey, GroupSignature,
                   GroupVerifKey, ProxyCredential, gsig_join, gsig_setup,
                   gsig_sign, gsig_verify, statement_equations)
from .protocol import (ContactEntry, HaState, IngestResult, ProtocolConfig,
                       ProtocolError, ProxyRoster, RiskResult, ServerState,
                       UserRecord, UserState, VerificationReport, VerifiedSet,
                       canonical_set_encoding, ccm_verify, choose_proxies,
                       duration_weight, ha_keygen, ha_publish,
                       ha_verify_contact_list, join_proxy_group, new_ebid,
                       p_sign, purge_expired, risk_score, s_keygen, s_psign,
                       server_ingest, set_ccm, set_params, set_user_id,
                       setup_proxy_group, sig_verify, user_keygen,
                       verify_published)
from .parallel import ParallelEngine
from .scenario import (InfectionEvent, ProximityEvent, Scenario,
                       ScenarioError, ScenarioResult, random_scenario,
                       run_scenario)
from .bench import BenchReport, bench

__version__ = "0.1.0"

__all__ = [
    "BenchReport",
    "ContactEntry",
    "CsigPublicKey",
    "CsigSecretKey",
    "CsigSignature",
    "DeterministicRng",
    "GroupElement",
    "GroupManagerKey",
    "GroupSignature",
    "GroupVerifKey",
    "GtElement",
    "HaState",
    "InfectionEvent",
    "IngestResult",
    "KnownExponentOracle",
    "MillerTable",
    "NiwiCrs",
    "NiwiProof",
    "NiwiWitness",
    "Orientation",
    "PairingContext",
    "PairingProductEquation",
    "ParallelEngine",
    "ProtocolConfig",
    "ProtocolError",
    "ProximityEvent",
    "ProxyCredential",
    "ProxyRoster",
    "RiskResult",
    "Scenario",
    "ScenarioError",
    "ScenarioResult",
    "ServerState",
    "UserRecord",
    "UserState",
    "VerificationReport",
    "VerifiedSet",
    "X_VARS",
    "XsigKeyPair",
    "XsigPublicKey",
    "XsigSignature",
    "Y_VARS",
    "bench",
    "canonical_set_encoding",
    "ccm_verify",
    "choose_proxies",
    "crs_gen",
    "duration_weight",
    "csig_keygen",
    "csig_sign",
    "csig_verify",
    "equation_holds",
    "gsig_join",
    "gsig_setup",
    "gsig_sign",
    "gsig_verify",
    "ha_keygen",
    "ha_publish",
    "ha_verify_contact_list",
    "join_proxy_group",
    "new_ebid",
    "niwi_prove",
    "niwi_verify",
    "p_sign",
    "purge_expired",
    "random_scenario",
    "risk_score",
    "run_scenario",
    "s_keygen",
    "s_psign",
    "server_ingest",
    "set_ccm",
    "set_params",
    "set_user_id",
    "setup_params",
    "setup_proxy_group",
    "sig_verify",
    "statement_equations",
    "user_keygen",
    "verify_published",
    "xsig_keygen",
    "xsig_sign",
    "xsig_verify",
    "__version__",
]
