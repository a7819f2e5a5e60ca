"""Size guards. Every call site reads these names; none hard-codes a limit."""

FIELD_ORDER_MAX = 2**20
FIELD_TABLE_MAX = 4096  # largest q for materialized q x q tables
CHROMATIC_MAX_VERTICES = 20
STABLE_PARTITION_MAX_VERTICES = 12
LATTICE_MAX_HYPERPLANES = 200
LATTICE_MAX_DIM = 8
POINT_COUNT_MAX = 2**26
SUBSPACE_ORACLE_MAX = 2**20
MOORE_MAX_VARS = 6
MOORE_MAX_TERMS = 60_000  # bound on C(D+k-1, k-1) for a degree-D form in k variables
DET_MAX_DIM = 5
