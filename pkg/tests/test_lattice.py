import random

import pytest

from surfdeform import lattice, oracle, stabilizer as st
from surfdeform.lattice import (DARK, LIGHT, HoleSpec, LatticeSpec, StringPath,
                                build_code, crossing_parity, rectangle)
from surfdeform.pauli import PauliOperator


def d3_code():
    return build_code(rectangle(3, 3), 9)


class TestBuild:
    def test_rectangle_encodes_one_qubit(self):
        code = d3_code()
        assert code.n_active == 9
        assert code.k == 1
        assert len(code.plaquettes) == 8

    def test_plaquette_shapes(self):
        code = d3_code()
        sizes = sorted(len(p.sites) for p in code.plaquettes.values())
        assert sizes == [2, 2, 2, 2, 4, 4, 4, 4]
        for p in code.plaquettes.values():
            assert p.color == lattice.cell_color(p.cell)

    def test_generators_commute(self):
        code = build_code(rectangle(4, 5), 20)
        st.validate_group(code.group)

    def test_all_dark_border_disk_trivial(self):
        # Uniform border color leaves no nontrivial classes.
        spec = LatticeSpec(3, 3, ((DARK, 12),))
        code = build_code(spec, 9)
        assert code.k == 0

    def test_dark_disk_with_dark_holes(self):
        spec = LatticeSpec(5, 7, ((DARK, 24),),
                           holes=(HoleSpec((((1, 1), DARK),)),
                                  HoleSpec((((3, 4), DARK),))))
        code = build_code(spec, 35)
        assert code.k == 2

    def test_hardware_too_small(self):
        with pytest.raises(lattice.HardwareTooSmall):
            build_code(rectangle(3, 3), 8)

    def test_bad_runs(self):
        with pytest.raises(lattice.InvalidColoring):
            build_code(LatticeSpec(3, 3, ((DARK, 5),)), 9)

    def test_spectators_fixed_by_z(self):
        spec = LatticeSpec(3, 3, rectangle(3, 3).border_runs, deactivated=((2, 2),))
        code = build_code(spec, 12)
        fixed = [g for g in code.group.generators if g.weight() == 1]
        assert len(fixed) == 4  # site (2,2) plus three padding qubits
        assert all(g.zbits and not g.xbits for g in fixed)


class TestOperators:
    def test_plaquette_operator_types(self):
        code = d3_code()
        dark = code.plaquette_operator((0, 0))
        assert dark.to_string() == "+XXIXXIIII"
        light = code.plaquette_operator((0, 1))
        assert light.zbits and not light.xbits

    def test_missing_plaquette(self):
        code = d3_code()
        with pytest.raises(lattice.MissingPlaquette):
            code.plaquette_operator((0, 2))

    def test_plaquette_as_opposite_color_loop(self):
        code = d3_code()
        # The four corners of a dark cell form a closed light loop with the
        # same X pattern as the plaquette operator.
        loop = StringPath(LIGHT, lattice.sites_of_cell((0, 0)))
        assert code.string_operator(loop).xbits == code.plaquette_operator((0, 0)).xbits

    def test_string_operator_letters(self):
        code = d3_code()
        z_line = StringPath(DARK, ((1, 0), (1, 1), (1, 2)))
        op = code.string_operator(z_line)
        assert op.to_string() == "+IIIZZZIII"
        x_line = StringPath(LIGHT, ((0, 1), (1, 1), (2, 1)))
        assert code.string_operator(x_line).to_string() == "+IXIIXIIXI"

    def test_single_site_string(self):
        code = d3_code()
        op = code.string_operator(StringPath(DARK, ((1, 1),)))
        assert op.weight() == 1

    def test_malformed_path(self):
        code = d3_code()
        with pytest.raises(lattice.MalformedPath):
            code.string_operator(StringPath(DARK, ((0, 0), (2, 2))))
        with pytest.raises(lattice.MalformedPath):
            code.string_operator(StringPath(DARK, ((0, 0), (8, 8))))

    def test_diagonal_steps_respect_color(self):
        code = build_code(rectangle(4, 4), 16)
        # (1,1)->(2,2) crosses cell (1,1), a dark cell.
        code.validate_path(StringPath(DARK, ((1, 1), (2, 2))))
        with pytest.raises(lattice.MalformedPath):
            code.validate_path(StringPath(LIGHT, ((1, 1), (2, 2))))


class TestClosureAndHomology:
    def test_logical_strings(self):
        code = d3_code()
        z_line = StringPath(DARK, ((1, 0), (1, 1), (1, 2)))
        x_line = StringPath(LIGHT, ((0, 1), (1, 1), (2, 1)))
        assert code.is_closed(z_line)
        assert code.is_closed(x_line)
        assert not code.is_boundary(z_line)
        assert not code.is_boundary(x_line)
        assert code.homology_class(z_line) == (1,)
        assert code.homology_class(x_line) == (1,)

    def test_open_string_ends_on_plaquettes(self):
        code = d3_code()
        path = StringPath(DARK, ((1, 0), (1, 1)))
        assert not code.is_closed(path)
        ends = code.endpoint_cells(path)
        assert len(ends) == 2
        with pytest.raises(lattice.OpenString):
            code.is_boundary(path)

    def test_plaquette_loop_is_boundary(self):
        code = d3_code()
        loop = StringPath(LIGHT, lattice.sites_of_cell((0, 0)))
        assert code.is_closed(loop)
        assert code.is_boundary(loop)
        assert code.homology_class(loop) == (0,)

    def test_string_to_wrong_border_is_open(self):
        code = d3_code()
        # Dark string into the light border: endpoint plaquette violated.
        path = StringPath(DARK, ((0, 0), (0, 1)))
        assert not code.is_closed(path)

    def test_boundary_iff_in_group(self):
        code = d3_code()
        rng = random.Random(4)
        for _ in range(40):
            color = DARK if rng.random() < 0.5 else LIGHT
            walk = random_closed_walk(code, color, rng)
            if walk is None:
                continue
            op = code.string_operator(walk)
            assert code.is_boundary(walk) == st.in_group_pattern(code.group, op)
            assert code.is_boundary(walk) == (code.homology_class(walk) ==
                                              (0,) * code.k)

    def test_sum_with_boundary_keeps_class(self):
        code = d3_code()
        z_line = {(1, 0), (1, 1), (1, 2)}
        plaq = set(code.plaquettes[(0, 1)].sites)
        summed = tuple(sorted(z_line ^ plaq))
        path = StringPath(DARK, summed)
        assert code.homology_class(path) == (1,)


def random_closed_walk(code, color, rng, tries=40):
    """Random closed same-color pattern built from generators and classes."""
    boundary, reps, _ = code._homology_data(color)
    pool = boundary + reps
    for _ in range(tries):
        mask = 0
        for row in pool:
            if rng.random() < 0.4:
                mask ^= row
        if mask == 0:
            continue
        sites = tuple(code._site_order[i] for i in range(len(code._site_order))
                      if (mask >> i) & 1)
        return StringPath(color, sites)
    return None


class TestCrossing:
    def test_disjoint_even(self):
        a = StringPath(DARK, ((1, 0), (1, 1)))
        b = StringPath(LIGHT, ((2, 1), (2, 2)))
        assert crossing_parity(a, b) == "even"

    def test_single_crossing_anticommutes(self):
        code = d3_code()
        a = StringPath(DARK, ((1, 0), (1, 1), (1, 2)))
        b = StringPath(LIGHT, ((0, 1), (1, 1), (2, 1)))
        assert crossing_parity(a, b) == "odd"
        assert not code.string_operator(a).commutes(code.string_operator(b))

    def test_double_crossing_commutes(self):
        code = build_code(rectangle(4, 4), 16)
        a = StringPath(DARK, ((1, 0), (1, 1), (1, 2), (1, 3)))
        b = StringPath(LIGHT, ((0, 1), (1, 1), (1, 2), (0, 2)))
        assert crossing_parity(a, b) == "even"
        assert code.string_operator(a).commutes(code.string_operator(b))

    def test_same_color_rejected(self):
        with pytest.raises(lattice.MalformedPath):
            crossing_parity(StringPath(DARK, ((0, 0),)), StringPath(DARK, ((1, 1),)))

    def test_random_crossing_matches_commutation(self):
        code = build_code(rectangle(4, 4), 16)
        rng = random.Random(9)
        sites = sorted(code.active)
        for _ in range(60):
            a = StringPath(DARK, tuple(rng.sample(sites, rng.randrange(1, 6))))
            b = StringPath(LIGHT, tuple(rng.sample(sites, rng.randrange(1, 6))))
            ops_commute = PauliOperator.from_support(
                code.hardware_n, map(code.qubit_index, set(a.sites)), "Z").commutes(
                PauliOperator.from_support(
                    code.hardware_n, map(code.qubit_index, set(b.sites)), "X"))
            assert (crossing_parity(a, b) == "even") == ops_commute


class TestDistanceExamples:
    def test_d3_distance_exhaustive(self):
        code = d3_code()
        assert oracle.brute_force_distance(code.group) == 3
        assert st.distance(code.group) == 3

    def test_distance_grows_with_size(self):
        c33 = d3_code()
        c55 = build_code(rectangle(5, 5), 25)
        assert st.distance(c55.group, n_max=25) == 5
        assert st.distance(c55.group, n_max=25) > st.distance(c33.group)

    def test_sector_distances_grow_separately(self):
        c35 = build_code(rectangle(3, 5), 15)
        dx33, dz33 = st.css_sector_distances(d3_code().group)
        dx35, dz35 = st.css_sector_distances(c35.group)
        assert (dx33, dz33) == (3, 3)
        # Wider lattice: dark (Z) strings span more columns.
        assert dz35 == 5 and dx35 == 3

    def test_string_sum_property(self):
        code = d3_code()
        a = {(1, 0), (1, 1), (1, 2)}
        b = set(code.plaquettes[(1, 0)].sites)
        pa = code.string_operator(StringPath(DARK, tuple(sorted(a))))
        pb = code.string_operator(StringPath(DARK, tuple(sorted(b))))
        pab = code.string_operator(StringPath(DARK, tuple(sorted(a ^ b))))
        prod = pa.mul(pb)
        assert (prod.xbits, prod.zbits) == (pab.xbits, pab.zbits)


def test_code_id_stable_and_geometry_sensitive():
    a, b = d3_code(), d3_code()
    assert a.code_id() == b.code_id()
    c = a.rebuild(active=a.active - {(0, 0)}, validate=False)
    assert c.code_id() != a.code_id()
