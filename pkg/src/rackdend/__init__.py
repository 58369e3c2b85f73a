"""Rack and group cochain complexes, dendriform products, and the morphism S."""
from rackdend.cochain import Cochain, cohomology, diff_matrix, differential, pointed_cohomology
from rackdend.kernels import BACKEND
from rackdend.morphism import S_map, composite_S_check, induced_H1, verify_algebra_morphism, verify_chain_map
from rackdend.products import check_dendriform, check_leibniz, cup, prec, star, succ
from rackdend.rings import Integers, IntegersMod, MatrixRing, parse_ring
from rackdend.structures import (FiniteGroup, FiniteRack, FiniteShelf, conj_rack, group_fixture, load_structure,
                                 rack_fixture, validate)

__version__ = "0.1.0"
