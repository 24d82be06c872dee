"""coxkernel: exact machinery for graded monoid algebras and Cox presentations.

Layers, bottom to top: `lattice` (integer linear algebra over finitely
generated abelian groups), `cones` (rational polyhedral cones, affine
monoids, fans), `spectra` (graded monoid algebras, graded spectra, good
quotients, coarsening), `divisors` (invariant divisors, class groups,
divisorial algebras), `cox` (Cox presentations, characteristic spaces,
verifier suites A-D, base reconstruction), and `cli`.
"""

from .errors import (
    ConstructionError,
    CoxKernelError,
    EnumerationBoundError,
    FaithfulnessError,
    InputError,
    NotPointedError,
    TorusFactorError,
)
from .lattice import (
    FgAbelianGroup,
    GroupHom,
    IntMatrix,
    cokernel,
    free_group,
    kernel,
    smith_normal_form,
    smith_normal_form_with_inverses,
    solve,
    subgroup_generates,
)
from .cones import (
    AffineMonoid,
    Cone,
    Face,
    Fan,
    Poset,
    hilbert_basis,
    monoid_generators_of_cone,
    saturated_monoid_from_cone,
)
from .spectra import (
    CoarseningData,
    GradedMonoidAlgebra,
    HomogeneousPolynomial,
    MonomialIdeal,
    coarsen_cie,
    distinguished_point,
    good_quotient_affine,
    homogeneous_units,
    invariant_spectrum,
    k_spectrum,
    monomial_valuation,
    polynomial_ring,
    proj_quotient,
    spec_morphism,
    stalk_monoid,
)
from .divisors import (
    DivisorClass,
    DivisorialAlgebraSpec,
    KWeilDivisor,
    WeilDivisor,
    box_plus,
    class_group,
    component_membership,
    divisorial_algebra_presentation,
    divisorial_class_semigroup,
    global_sections,
    invariant_kdivisor,
    mu_valuation,
    principal_divisor,
    reflexive_vector,
)
from .cox import (
    CharSpaceChart,
    CoxPresentation,
    VerificationReport,
    characteristic_space,
    cox_presentation,
    find_prime_system,
    orbit_face_lattice,
    reconstruct_base,
    reconstruction_round_trip,
    toric_f1_points,
    verify_theorem_a,
    verify_theorem_b,
    verify_theorem_c,
    verify_theorem_d,
)

__version__ = "0.1.0"
