"""Exact higher Hochschild homology of finite commutative algebras over finite simplicial sets."""
from .algebras import (GradedAlgebra, CoefficientModule, augmentation_module, dual_numbers,
                       kernel_module, load_algebra, self_module, standard_modules,
                       truncated_polynomial, validate)
from .hilbert import HilbertSeries, free_graded_hilbert, series_expand
from .homology import (HomologyBlock, HomologyClass, HomologyTable, homology_basis,
                       homology_dims, homology_table, membership, normalize_check)
from .homology_ops import (LodayFamily, bockstein, exactness_report, in_kernel_of_f,
                           is_t_multiple, map_j, reduce_f, shuffle_product, t_action)
from .linalg import FieldSpec, FieldStrategy, PrimeField, Rationals, SparseMatrix, rank
from .loday import LodayComplex, build, ses_complexes
from .named import named_class
from .simplicial import SimplicialSet, Simplex, circle, point, product, sphere, wedge
from .spaces import parse_space, print_space, realize

__version__ = "0.1.0"
