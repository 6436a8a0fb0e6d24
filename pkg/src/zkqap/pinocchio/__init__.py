"""Pairing-based verifiable computation over QAPs, with zero knowledge."""
from .attacks import (
    SQUARE_CHAIN,
    SQUARE_WITH_FLAG,
    attack_beta_malleate,
    attack_inconsistent_variable,
    attack_swap_operands,
    forge_with_assignments,
)
from .protocol import (
    PROOF_SLOTS,
    Proof,
    ProvingKey,
    Secrets,
    Variant,
    VerificationKey,
    prove,
    public_commitments,
    sample_secrets,
    setup,
    setup_from_powers,
    setup_from_secrets,
    setup_with_trapdoor,
    verify,
    verify_checks,
)
from .serialize import dumps, from_json, loads, to_json

__all__ = [
    "PROOF_SLOTS",
    "Proof",
    "ProvingKey",
    "SQUARE_CHAIN",
    "SQUARE_WITH_FLAG",
    "Secrets",
    "Variant",
    "VerificationKey",
    "attack_beta_malleate",
    "attack_inconsistent_variable",
    "attack_swap_operands",
    "dumps",
    "forge_with_assignments",
    "from_json",
    "loads",
    "prove",
    "public_commitments",
    "sample_secrets",
    "setup",
    "setup_from_powers",
    "setup_from_secrets",
    "setup_with_trapdoor",
    "to_json",
    "verify",
    "verify_checks",
]
