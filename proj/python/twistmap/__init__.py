"""Class maps between twisted unipotent classes, with brute-force oracles."""

from ._twistmap import (
    BoundExceeded,
    CheckFailure,
    Partition,
    class_inventory,
    count_unitary_dl,
    dominance_le,
    elliptic_jordan_type,
    exceptional_table,
    fiber_phi_prime,
    length_dimension,
    model_partitions,
    mu_of_class,
    partitions_of,
    phi_char2_elliptic,
    phi_prime,
    psi_prime,
    run_acceptance,
    table_checksum,
    verify_elliptic,
    z_perm,
)

__all__ = [
    "BoundExceeded",
    "CheckFailure",
    "Partition",
    "class_inventory",
    "count_unitary_dl",
    "dominance_le",
    "elliptic_jordan_type",
    "exceptional_table",
    "fiber_phi_prime",
    "length_dimension",
    "model_partitions",
    "mu_of_class",
    "partitions_of",
    "phi_char2_elliptic",
    "phi_prime",
    "psi_prime",
    "run_acceptance",
    "table_checksum",
    "verify_elliptic",
    "z_perm",
]
__version__ = "0.1.0"
