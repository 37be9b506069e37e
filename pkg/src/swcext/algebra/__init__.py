from swcext.algebra.field import (
    FieldSpec, gf, gf_make, gf_add, gf_mul, gf_neg, gf_inv,
    find_irreducible_quadratic, quadratic_form, is_irreducible, prime_power,
)
from swcext.algebra.linalg import (
    Subspace, VectorSpace, vector_space, subspaces, all_subspaces, gaussian_binomial,
    coset_intersection_size, row_reduce, rank, kernel, image, left_kernel, row_space,
    mat_mul, mat_inv, mat_det, mat_pow, identity, transpose, hstack, block_diag,
    vec_mat, vec_add, vec_sub, vec_scale, as_mat, is_invertible, ENUM_GUARD,
)
