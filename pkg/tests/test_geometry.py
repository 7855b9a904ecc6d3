import numpy as np
import pytest

from scmetrics.cramer import discrete_cramer_1d, discrete_sliced_cramer_2d
from scmetrics.geometry import (
    AffineMap,
    Dilation,
    DirectionSet,
    Rotation,
    Translation,
    bound_dilation,
    bound_general,
    bound_monotone_1d,
    bound_rotation,
    bound_translation,
    convolution_factor,
    cosine_pmean,
    directional_lower_factor,
    displacement_along,
    displacement_sup,
    mean_displacement,
    mean_mixed_norm,
    parse_deformation,
    push_forward_grid,
    push_forward_mixture,
    rotation_factor,
    uniform_directions,
)
from scmetrics.grids import (
    Field2D,
    GaussianMixtureSpec,
    Grid1D,
    Grid2D,
    lebesgue_norm,
    riemann_integral,
    sample_mixture,
)
from scmetrics.phantoms import source_scene

RNG = np.random.default_rng(31337)


def blob(center, width):
    return GaussianMixtureSpec(np.array([center]), np.array([1.0]), width)


# --- displacement measures ---------------------------------------------------------


def test_displacement_closed_forms():
    assert displacement_sup(Translation(1.0, (0.3, -0.4))) == pytest.approx(0.5)
    assert displacement_sup(Rotation(1.0, np.pi / 3)) == pytest.approx(1.0)
    assert displacement_sup(Dilation(1.0, 1.5)) == pytest.approx(0.5)
    assert displacement_sup(Rotation(2.0, np.pi / 3)) == pytest.approx(2.0)


def test_displacement_along_directions():
    t = Translation(1.0, (1.0, 0.0))
    assert displacement_along(t, (0.0, 1.0)) == 0.0
    for phi in (0.0, 0.3, 1.2):
        u = (np.cos(phi), np.sin(phi))
        assert displacement_along(t, u) == pytest.approx(abs(np.cos(phi)), abs=1e-12)
    with pytest.raises(ValueError):
        displacement_along(t, (1.0, 1.0))


def test_displacement_matches_for_inverse_maps():
    eta = uniform_directions(128)
    maps = [
        Translation(1.0, (0.2, -0.1)),
        Rotation(1.0, 0.7),
        Dilation(1.0, 1.4),
        AffineMap(1.0, ((1.1, 0.2), (-0.15, 0.95)), (0.05, -0.1)),
    ]
    for d in maps:
        for p in (1.0, 2.0):
            assert mean_displacement(d, eta, p) == pytest.approx(
                mean_displacement(d.inverse(), eta, p), abs=1e-9
            )
        assert displacement_sup(d) == pytest.approx(displacement_sup(d.inverse()), abs=1e-9)


def test_mean_displacement_translation_constant():
    eta = uniform_directions(1024)
    tr = Translation(1.0, (1.0, 0.0))
    assert mean_displacement(tr, eta, 2.0) == pytest.approx(1 / np.sqrt(2), abs=1e-3)
    assert mean_displacement(tr, eta, 1.0) <= displacement_sup(tr)


def test_directional_lower_factor_uniform_closed_forms():
    eta = uniform_directions(1024)
    e1 = (1.0, 0.0)
    assert directional_lower_factor(1.0, eta, e1) == pytest.approx(2 / np.pi, abs=1e-3)
    assert directional_lower_factor(2.0, eta, e1) == pytest.approx(1 / np.sqrt(2), abs=1e-3)


def test_lower_factor_inequality_on_random_affine_maps():
    eta = uniform_directions(256)
    for _ in range(5):
        A = np.eye(2) + 0.3 * RNG.standard_normal((2, 2))
        d = AffineMap(1.0, tuple(map(tuple, A)), tuple(0.2 * RNG.standard_normal(2)))
        pts = d._domain_boundary()
        disp = pts - d.apply(pts)
        idx = np.argmax(np.linalg.norm(disp, axis=1))
        ustar = disp[idx] / np.linalg.norm(disp[idx])
        for p in (1.0, 2.0, 4.0):
            lhs = mean_displacement(d, eta, p)
            rhs = displacement_sup(d) * directional_lower_factor(p, eta, ustar)
            assert lhs >= rhs * (1 - 1e-9)


@pytest.mark.parametrize("p", [1.0, 2.0, 4.0, 10.0])
def test_cosine_pmean_matches_direction_average(p):
    eta = uniform_directions(1024)
    numeric = (eta.weights @ np.abs(eta.directions @ np.array([1.0, 0.0])) ** p) ** (1 / p)
    assert cosine_pmean(p) == pytest.approx(numeric, abs=1e-3)


def test_cosine_pmean_known_values():
    assert cosine_pmean(1.0) == pytest.approx(2 / np.pi, abs=1e-12)
    assert cosine_pmean(2.0) == pytest.approx(1 / np.sqrt(2), abs=1e-12)
    assert cosine_pmean(np.inf) == 1.0


def test_direction_set_validation():
    with pytest.raises(ValueError):
        DirectionSet(np.array([[1.0, 1.0]]), np.array([1.0]))
    with pytest.raises(ValueError):
        DirectionSet(np.array([[1.0, 0.0]]), np.array([0.5]))


# --- push-forwards -------------------------------------------------------------------


def test_push_forward_identity_and_translation():
    spec = blob([0.1, -0.2], 0.15)
    ident = push_forward_mixture(spec, Rotation(1.0, 0.0))
    np.testing.assert_allclose(ident.centers, spec.centers)
    grid = Grid2D(2.0, 64)
    v = (0.3, -0.15)
    moved = push_forward_mixture(spec, Translation(1.0, v))
    sampled = sample_mixture(moved, grid)
    t = grid.nodes()
    X, Y = np.meshgrid(t, t, indexing="ij")
    from scmetrics.grids import mixture_value

    expected = mixture_value(spec, np.column_stack([(X + v[0]).ravel(), (Y + v[1]).ravel()]))
    np.testing.assert_allclose(sampled.values.ravel(), expected, atol=1e-13)


def test_push_forward_dilation_preserves_mass():
    spec = blob([0.05, 0.1], 0.2)
    grid = Grid2D(2.5, 256)
    dilated = push_forward_mixture(spec, Dilation(1.0, 2.0))
    assert dilated.width == pytest.approx(0.1)
    assert riemann_integral(sample_mixture(dilated, grid)) == pytest.approx(1.0, abs=1e-6)


def test_push_forward_similarity_affine():
    spec = blob([0.2, 0.0], 0.2)
    s, phi = 1.3, 0.4
    A = s * np.array([[np.cos(phi), -np.sin(phi)], [np.sin(phi), np.cos(phi)]])
    d = AffineMap(1.0, tuple(map(tuple, A)), (0.05, -0.02))
    out = push_forward_mixture(spec, d)
    assert isinstance(out, GaussianMixtureSpec)
    assert out.width == pytest.approx(0.2 / s)
    grid = Grid2D(2.5, 256)
    assert riemann_integral(sample_mixture(out, grid)) == pytest.approx(1.0, abs=1e-6)


def test_push_forward_general_affine_falls_back():
    spec = blob([0.0, 0.0], 0.2)
    shear = AffineMap(1.0, ((1.0, 0.3), (0.0, 1.0)), (0.0, 0.0))
    with pytest.raises(ValueError):
        push_forward_mixture(spec, shear)
    grid = Grid2D(2.5, 128)
    with pytest.warns(UserWarning):
        out = push_forward_mixture(spec, shear, grid)
    assert isinstance(out, Field2D)
    assert riemann_integral(out) == pytest.approx(1.0, abs=1e-3)


def test_push_forward_grid_identity_and_rotation():
    grid = Grid2D(2.5, 256)
    f = sample_mixture(blob([0.3, -0.2], 0.18), grid)
    ident = push_forward_grid(f, Translation(1.0, (0.0, 0.0)))
    np.testing.assert_array_equal(ident.values, f.values)
    # quarter turns map nodes onto nodes: no interpolation error at all
    quarter = push_forward_grid(f, Rotation(1.0, np.pi / 2))
    analytic_q = sample_mixture(
        push_forward_mixture(blob([0.3, -0.2], 0.18), Rotation(1.0, np.pi / 2)), grid
    )
    assert np.abs(quarter.values - analytic_q.values).max() <= 1e-10
    # generic angle: bilinear error scales with h^2 |f''|
    spec = blob([0.3, -0.2], 0.3)
    f = sample_mixture(spec, grid)
    theta = np.pi / 5
    rotated = push_forward_grid(f, Rotation(1.0, theta))
    analytic = sample_mixture(push_forward_mixture(spec, Rotation(1.0, theta)), grid)
    scale = np.abs(f.values).max()
    assert np.abs(rotated.values - analytic.values).max() <= 1e-3 * scale
    assert abs(riemann_integral(rotated) - riemann_integral(f)) <= 1e-3


def test_parse_deformation_strings():
    d = parse_deformation("translate:0.3,-0.1")
    assert isinstance(d, Translation) and d.v == (0.3, -0.1)
    assert isinstance(parse_deformation("rotate:0.5"), Rotation)
    assert isinstance(parse_deformation("dilate:1.2"), Dilation)
    aff = parse_deformation("affine:1,0.2,-0.1,0.9,0.05,0")
    assert isinstance(aff, AffineMap)
    for bad in ("translate:1", "rotate:a", "dilate:", "spin:0.3", "affine:1,2,3"):
        with pytest.raises(ValueError):
            parse_deformation(bad)


# --- mean mixed norms ----------------------------------------------------------------


def test_mixed_norm_of_unit_mass_density():
    grid = Grid2D(2.5, 128)
    f = sample_mixture(blob([0.1, -0.2], 0.15), grid)
    eta = uniform_directions(256)
    for r in (1.0, 2.0, np.inf):
        assert mean_mixed_norm(f, 1.0, r, eta) == pytest.approx(1.0, abs=1e-3)


def test_mixed_norm_support_bound():
    """|f|_{M^{p,r}} <= (2 R_support)^{(p-1)/p} |f|_{L^p} for planar fields."""
    grid = Grid2D(1.0, 128)
    eta = uniform_directions(128)
    t = grid.nodes()
    X, Y = np.meshgrid(t, t, indexing="ij")
    inside = (X**2 + Y**2) <= 0.6**2
    for _ in range(3):
        vals = RNG.standard_normal((128, 128)) * inside
        f = Field2D(grid, vals)
        for p in (1.0, 2.0, 10.0):
            lhs = mean_mixed_norm(f, p, p, eta)
            rhs = (2 * 0.6) ** ((p - 1) / p) * lebesgue_norm(f, p)
            assert lhs <= rhs * (1 + 1e-2)


def test_mixed_norm_rotation_invariance():
    grid = Grid2D(2.5, 128)
    spec = GaussianMixtureSpec(
        np.array([[0.4, 0.0], [-0.2, 0.3]]), np.array([0.7, 0.3]), 0.15
    )
    rotated = push_forward_mixture(spec, Rotation(1.0, 0.9))
    f = sample_mixture(spec, grid)
    fr = sample_mixture(rotated, grid)
    eta = uniform_directions(512)
    for p in (1.0, 2.0):
        assert mean_mixed_norm(f, p, p, eta) == pytest.approx(
            mean_mixed_norm(fr, p, p, eta), abs=1e-3
        )


# --- bound calculators ----------------------------------------------------------------


def test_bound_general_identity_and_p1():
    eta = uniform_directions(64)
    norms = {"M_p": 1.3, "M_p_inf": 1.7, "L1": 1.0}
    b = bound_general(norms, Translation(1.0, (0.0, 0.0)), eta, 2.0)
    assert b == (0.0, 0.0, 0.0)
    b1 = bound_general(norms, Translation(1.0, (0.5, 0.0)), eta, 1.0)
    assert b1[0] == pytest.approx(norms["M_p"] * 0.5)  # 2^{(p-1)/p} = 1 at p = 1


def test_bound_general_dominates_measured_distance():
    grid = Grid2D(2.5, 256)
    spec = source_scene()
    f = sample_mixture(spec, grid)
    eta = uniform_directions(512)
    radius = spec.support_radius()
    rot = Rotation(radius, 0.2)
    fr = sample_mixture(push_forward_mixture(spec, rot), grid)
    p = 2.0
    from scmetrics.geometry import projection_lp_profile

    profile = projection_lp_profile(f, p, eta)
    norms = {
        "M_p": float((eta.weights @ profile**p) ** (1 / p)),
        "M_p_inf": float(profile.max()),
        "L1": lebesgue_norm(f, 1.0),
    }
    measured = discrete_sliced_cramer_2d(f, fr, p)
    bounds = bound_general(norms, rot, eta, p)
    assert measured <= min(bounds) * 1.02


def test_bounds_hold_at_large_p_as_sup_surrogate():
    """p = 64 stands in for the sup norm; every bound still dominates."""
    grid = Grid2D(2.5, 128)
    spec = source_scene(width=0.1)
    f = sample_mixture(spec, grid)
    eta = uniform_directions(256)
    radius = spec.support_radius()
    p = 64.0
    from scmetrics.geometry import projection_lp_profile

    profile = projection_lp_profile(f, p, eta)
    norms = {
        "M_p": float((eta.weights @ profile**p) ** (1 / p)),
        "M_p_inf": float(profile.max()),
        "L1": lebesgue_norm(f, 1.0),
    }
    rot = Rotation(radius, 0.5)
    fr = sample_mixture(push_forward_mixture(spec, rot), grid)
    measured = discrete_sliced_cramer_2d(f, fr, p)
    assert measured <= min(bound_general(norms, rot, eta, p)) * 1.02
    assert measured <= radius * bound_rotation(0.5, p, norms["M_p"]) * 1.02
    dil = Dilation(radius, 1.3)
    fd = sample_mixture(push_forward_mixture(spec, dil), grid)
    measured_d = discrete_sliced_cramer_2d(f, fd, p)
    assert measured_d <= min(bound_general(norms, dil, eta, p)) * 1.02
    assert measured_d <= radius * bound_dilation(1.3, p, norms["M_p"]) * 1.02


def test_bound_general_switch_roles_takes_smaller_norms():
    eta = uniform_directions(64)
    d = Translation(1.0, (0.2, 0.0))
    f_norms = {"M_p": 2.0, "M_p_inf": 3.0, "L1": 1.0}
    g_norms = {"M_p": 1.0, "M_p_inf": 4.0, "L1": 1.0}
    merged = bound_general(f_norms, d, eta, 2.0, g_norms=g_norms)
    alone = bound_general({"M_p": 1.0, "M_p_inf": 3.0, "L1": 1.0}, d, eta, 2.0)
    assert merged == alone


def test_rotation_factor_branches():
    assert rotation_factor(0.0, 2.0) == 0.0
    # at p = 1 both branch formulas meet at theta = pi/2
    lo = rotation_factor(np.pi / 2 - 1e-9, 1.0)
    hi = rotation_factor(np.pi / 2, 1.0)
    assert lo == pytest.approx(np.sqrt(2), abs=1e-6)
    assert hi == pytest.approx(np.sqrt(2), abs=1e-6)
    assert rotation_factor(np.pi / 3, 2.0) == pytest.approx(3 ** 0.25, abs=1e-12)
    with pytest.raises(ValueError):
        rotation_factor(np.pi, 2.0)
    assert bound_rotation(np.pi / 3, 2.0, 2.0) == pytest.approx(2 * 3 ** 0.25)


def test_bound_translation_values_and_ratio():
    assert bound_translation((0.0, 0.0), 2.0, 1.0, 1.0) == (0.0, 0.0)
    b1, b2 = bound_translation((0.1, 0.0), 2.0, 1.0, 1.0)
    assert b1 == pytest.approx(0.1)
    assert b2 == pytest.approx(0.1 / np.sqrt(2), abs=1e-12)
    # sharper than the general bound exactly by the removed 2^{(p-1)/p}
    eta = uniform_directions(512)
    norms = {"M_p": 1.0, "M_p_inf": 1.0, "L1": 1.0}
    for p in (1.0, 2.0, 10.0):
        general = bound_general(norms, Translation(1.0, (0.1, 0.0)), eta, p)
        sharper = bound_translation((0.1, 0.0), p, 1.0, 1.0)
        assert general[0] / sharper[0] == pytest.approx(2 ** ((p - 1) / p))


def test_bound_dilation_values():
    assert bound_dilation(1.0 + 1e-12, 2.0, 1.0) == pytest.approx(0.0, abs=1e-9)
    assert bound_dilation(2.0, 1.0, 3.0) == pytest.approx(3.0)
    assert bound_dilation(2.0, 2.0, 1.0) == pytest.approx(1 / np.sqrt(2), abs=1e-12)
    with pytest.raises(ValueError):
        bound_dilation(0.9, 2.0, 1.0)


def test_bound_monotone_1d():
    assert bound_monotone_1d(0.0, 2.0, 5.0) == 0.0
    grid = Grid1D(-2.0, 2.0, 512)
    spec = GaussianMixtureSpec(np.array([[0.0]]), np.array([1.0]), 0.15)
    f = sample_mixture(spec, grid)
    eps = 0.05
    fe = sample_mixture(GaussianMixtureSpec(np.array([[-eps]]), np.array([1.0]), 0.15), grid)
    for p in (1.0, 2.0):
        lhs = discrete_cramer_1d(f, fe, p)
        assert lhs <= bound_monotone_1d(eps, p, lebesgue_norm(f, p), slope=1.0) * 1.01
    with pytest.raises(ValueError):
        bound_monotone_1d(0.1, 2.0, 1.0, slope=-1.0)


def test_convolution_factor_properties():
    grid = Grid2D(2.5, 128)
    w = sample_mixture(blob([0.0, 0.0], 0.12), grid)
    eta = uniform_directions(256)
    for p in (1.0, 2.0, 10.0):
        factor = convolution_factor(w, p, eta)
        assert factor == pytest.approx(1.0, abs=1e-3)
        assert convolution_factor(2.0 * w, p, eta) == pytest.approx(2.0, abs=2e-3)
        assert factor <= lebesgue_norm(w, 1.0) * (1 + 1e-3)
