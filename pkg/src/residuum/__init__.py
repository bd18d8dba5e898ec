"""Finite residuation algebras, their derived products and dual frames."""
from .constructions import (
    PartialMagma,
    Signature,
    Subalgebra,
    complex_algebra,
    cyclic_group,
    enumerate_subalgebras,
    heyting_from_dl,
    heyting_from_poset,
    pair_groupoid,
    small_groups,
    subalgebra_closure,
)
from .corpus import (
    CorpusSpec,
    NonUniversalityWitness,
    find_non_universality_witness,
    generate_corpus,
    run_property_sweep,
)
from .dual import (
    DualStructure,
    FunctionalityVerdict,
    build_dual,
    check_condition_2,
    check_condition_3,
    check_prop_25,
    check_prop_316_equivalence,
    functionality,
)
from .lattice import (
    FinLattice,
    FinPoset,
    big_join,
    big_meet,
    check_lemma_splitting,
    check_prime_implies_ji,
    downset_lattice,
    induced_order,
    is_distributive,
    is_finitely_prime,
    join_irreducibles,
)
from .report import CapacityError, CheckReport, ConstructionError, InconsistentAlgebraError, NonDistributiveError
from .residuation import (
    ResAlgebra,
    check_converse_inequality,
    check_left_inequality,
    check_mirror_inequality,
    derive_product,
    verify_axioms,
)

__version__ = "0.1.0"
