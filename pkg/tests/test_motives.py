import random

import pytest

from chowmot import (
    Cycle,
    DomainMismatchError,
    FormalSum,
    FormalSumMorphism,
    GradedCorrespondence,
    InvalidInputError,
    KKernel,
    Motive,
    MotiveMorphism,
    OrbitMorphism,
    PreconditionError,
    SupportConditionError,
    chern_character,
    chow_image,
    compatibility_check,
    compose_graded,
    compose_motive,
    degree_zero_rigidify,
    diagonal_class,
    dual,
    identity_kernel,
    k_compose,
    lefschetz_motive,
    line_bundle,
    make_variety,
    motive_of,
    nc_hom,
    orbit_compose,
    orlov_pipeline,
    permute_factors,
    split_idempotent,
    tate_motive,
    tate_twist,
    tensor,
    tensor_morphism,
    unit_motive,
    zero_motive,
)
from chowmot.verify import (
    _geometric_inverse,
    random_cycle_in_codims,
    random_kernel,
)

POINT = make_variety([])
P1 = make_variety([1])
P2 = make_variety([2])
P1xP1 = make_variety([1, 1])


def coordinate_projector(i):
    """The endomorphism of the motive of the line given by h_{i+1} on the
    square."""
    m = motive_of(P1)
    return MotiveMorphism(m, m, GradedCorrespondence(P1, P1, Cycle.hyperplane(P1xP1, i)))


def random_sandwiched_morphism(rng, source: Motive, target: Motive) -> MotiveMorphism:
    """A random morphism: sandwich a random correspondence of the right
    degree between the idempotents."""
    degree = target.twist - source.twist
    codim = source.variety.dim + degree
    raw = GradedCorrespondence(
        source.variety,
        target.variety,
        random_cycle_in_codims(rng, source.variety * target.variety, [codim]),
    )
    corr = compose_graded(compose_graded(source.idempotent, raw), target.idempotent)
    return MotiveMorphism(source, target, corr)


class TestMotiveConstruction:
    def test_motive_of_point(self):
        assert motive_of(POINT) == unit_motive()

    def test_motive_of_line(self):
        m = motive_of(P1)
        assert m.idempotent.cycle == Cycle.hyperplane(P1xP1, 0) + Cycle.hyperplane(P1xP1, 1)

    def test_motive_of_plane(self):
        m = motive_of(P2)
        square = P2 * P2
        expected = Cycle(square, {(0, 2): 1, (1, 1): 1, (2, 0): 1})
        assert m.idempotent.cycle == expected

    def test_non_idempotent_rejected(self):
        bad = GradedCorrespondence(P1, P1, Cycle.hyperplane(P1xP1, 0).scale(2))
        with pytest.raises(InvalidInputError):
            Motive(P1, 0, bad)

    def test_impure_idempotent_rejected(self):
        mixed = GradedCorrespondence(P1, P1, Cycle.one(P1xP1) + diagonal_class(P1))
        with pytest.raises(InvalidInputError):
            Motive(P1, 0, mixed)

    def test_morphism_degree_enforced(self):
        m = motive_of(P1)
        with pytest.raises(InvalidInputError):
            MotiveMorphism(m, tate_twist(m, 1), m.idempotent)

    def test_sandwich_enforced(self):
        m = motive_of(P1)
        l = lefschetz_motive()
        # the diagonal is not fixed by sandwiching with the Lefschetz projector
        with pytest.raises(InvalidInputError):
            MotiveMorphism(l, l, m.idempotent)


class TestMotiveComposition:
    def test_identity_neutral(self):
        rng = random.Random(127)
        objects = [unit_motive(), motive_of(P1), motive_of(P2), lefschetz_motive()]
        for _ in range(100):
            source, target = rng.choice(objects), rng.choice(objects)
            f = random_sandwiched_morphism(rng, source, target)
            assert compose_motive(source.identity_morphism(), f) == f
            assert compose_motive(f, target.identity_morphism()) == f

    def test_associativity(self):
        rng = random.Random(131)
        objects = [unit_motive(), motive_of(P1), motive_of(P2), lefschetz_motive()]
        for _ in range(100):
            a, b, c, d = (rng.choice(objects) for _ in range(4))
            f = random_sandwiched_morphism(rng, a, b)
            g = random_sandwiched_morphism(rng, b, c)
            h = random_sandwiched_morphism(rng, c, d)
            assert compose_motive(compose_motive(f, g), h) == compose_motive(f, compose_motive(g, h))

    def test_zero_absorbs(self):
        rng = random.Random(137)
        m, n = motive_of(P1), motive_of(P2)
        f = random_sandwiched_morphism(rng, m, n)
        zero = MotiveMorphism.zero(n, m)
        assert compose_motive(f, zero).is_zero

    def test_object_mismatch(self):
        f = motive_of(P1).identity_morphism()
        g = motive_of(P2).identity_morphism()
        with pytest.raises(DomainMismatchError):
            compose_motive(f, g)


class TestTensorDualTwist:
    def test_unit_is_strict_unit(self):
        m = motive_of(P1)
        assert tensor(unit_motive(), m) == m
        assert tensor(m, unit_motive()) == m

    def test_tensor_of_lines(self):
        t = tensor(motive_of(P1), motive_of(P1))
        assert t.variety == P1xP1 and t.twist == 0
        assert t.idempotent == GradedCorrespondence.identity(P1xP1)

    def test_double_dual(self):
        m = motive_of(P1)
        assert dual(dual(m)) == m

    def test_dual_twist_arithmetic(self):
        l = lefschetz_motive()
        d = dual(l)
        assert d.twist == 1
        assert d.idempotent.cycle == Cycle.hyperplane(P1xP1, 0)

    def test_tate_twist_zero(self):
        m = motive_of(P2)
        assert tate_twist(m, 0) == m

    def test_tate_twist_composes(self):
        m = motive_of(P2)
        assert tate_twist(tate_twist(m, 2), -1) == tate_twist(m, 1)

    def test_dual_of_tensor_up_to_reordering(self):
        m, n = motive_of(P1), motive_of(P2)
        lhs = dual(tensor(m, n))
        rhs = tensor(dual(m), dual(n))
        assert lhs.twist == rhs.twist
        assert lhs.variety == rhs.variety
        assert lhs.idempotent == rhs.idempotent

    def test_tensor_morphism_functorial(self):
        rng = random.Random(139)
        m, n = motive_of(P1), lefschetz_motive()
        for _ in range(10):
            f1 = random_sandwiched_morphism(rng, m, m)
            f2 = random_sandwiched_morphism(rng, m, m)
            g1 = random_sandwiched_morphism(rng, n, n)
            g2 = random_sandwiched_morphism(rng, n, n)
            lhs = tensor_morphism(compose_motive(f1, f2), compose_motive(g1, g2))
            rhs = compose_motive(tensor_morphism(f1, g1), tensor_morphism(f2, g2))
            assert lhs == rhs


class TestTateAndLefschetz:
    def test_tate_motive_data(self):
        t = tate_motive()
        assert t.variety == POINT and t.twist == -1

    def test_lefschetz_isomorphic_to_tate(self):
        # mutually inverse morphisms between the Lefschetz and Tate motives;
        # under the conventions pinned here the twisting object itself, not
        # its dual, matches the Lefschetz piece
        l = lefschetz_motive()
        t = tate_motive()
        u = MotiveMorphism(l, t, GradedCorrespondence(P1, POINT, Cycle.one(P1)))
        v = MotiveMorphism(t, l, GradedCorrespondence(POINT, P1, Cycle.hyperplane(P1, 0)))
        assert compose_motive(u, v) == l.identity_morphism()
        assert compose_motive(v, u) == t.identity_morphism()

    def test_dual_lefschetz_isomorphic_to_inverse_twist(self):
        ldual = dual(lefschetz_motive())
        tinv = tate_twist(unit_motive(), -1)
        u = MotiveMorphism(ldual, tinv, GradedCorrespondence(P1, POINT, Cycle.hyperplane(P1, 0)))
        v = MotiveMorphism(tinv, ldual, GradedCorrespondence(POINT, P1, Cycle.one(P1)))
        assert compose_motive(u, v) == ldual.identity_morphism()
        assert compose_motive(v, u) == tinv.identity_morphism()


class TestSplitIdempotent:
    def test_identity_splits_to_itself(self):
        m = motive_of(P1)
        image, section, retraction = split_idempotent(m, m.identity_morphism())
        assert image == m
        assert compose_motive(retraction, section) == m.identity_morphism()

    def test_zero_splits_to_zero_motive(self):
        m = motive_of(P1)
        image, section, retraction = split_idempotent(m, MotiveMorphism.zero(m, m))
        assert image == zero_motive()
        assert section.is_zero and retraction.is_zero

    def test_split_contract(self):
        m = motive_of(P1)
        for p in [coordinate_projector(0), coordinate_projector(1)]:
            image, section, retraction = split_idempotent(m, p)
            assert compose_motive(section, retraction) == image.identity_morphism()
            assert compose_motive(retraction, section) == p

    def test_beta_gives_lefschetz(self):
        m = motive_of(P1)
        image, _, _ = split_idempotent(m, coordinate_projector(1))
        assert image == lefschetz_motive()

    def test_non_idempotent_rejected(self):
        m = motive_of(P1)
        p = coordinate_projector(0)
        with pytest.raises(InvalidInputError):
            split_idempotent(m, p + p)

    def test_lefschetz_orthogonal_decomposition(self):
        alpha, beta = coordinate_projector(0), coordinate_projector(1)
        m = motive_of(P1)
        assert compose_motive(alpha, alpha) == alpha
        assert compose_motive(beta, beta) == beta
        assert compose_motive(alpha, beta).is_zero
        assert compose_motive(beta, alpha).is_zero
        assert alpha + beta == m.identity_morphism()


class TestFormalSums:
    def test_matrix_identity_and_associativity(self):
        rng = random.Random(149)
        m, n = motive_of(P1), lefschetz_motive()
        fs = FormalSum((m, n))
        ident = fs.identity_morphism()

        def random_endo():
            return FormalSumMorphism(
                fs,
                fs,
                (
                    (random_sandwiched_morphism(rng, m, m), random_sandwiched_morphism(rng, n, m)),
                    (random_sandwiched_morphism(rng, m, n), random_sandwiched_morphism(rng, n, n)),
                ),
            )

        for _ in range(10):
            f, g, h = random_endo(), random_endo(), random_endo()
            assert f.then(ident).matrix == f.matrix
            assert ident.then(f).matrix == f.matrix
            assert f.then(g).then(h).matrix == f.then(g.then(h)).matrix

    def test_line_decomposes_as_unit_plus_lefschetz(self):
        m = motive_of(P1)
        one = unit_motive()
        l = lefschetz_motive()
        alpha, beta = coordinate_projector(0), coordinate_projector(1)
        _, sect_a, retr_a = split_idempotent(m, alpha)
        image_a, _, _ = split_idempotent(m, alpha)

        to_line = MotiveMorphism(one, m, GradedCorrespondence(POINT, P1, Cycle.one(P1)))
        to_point = MotiveMorphism(m, one, GradedCorrespondence(P1, POINT, Cycle.hyperplane(P1, 0)))
        _, sect_b, retr_b = split_idempotent(m, beta)

        whole = FormalSum((m,))
        pieces = FormalSum((one, l))
        # columns map the single source summand; rows index target summands
        u = FormalSumMorphism(whole, pieces, ((to_point,), (retr_b,)))
        v = FormalSumMorphism(pieces, whole, ((to_line, sect_b),))
        assert u.then(v).matrix == whole.identity_morphism().matrix
        assert v.then(u).matrix == pieces.identity_morphism().matrix

    def test_shape_mismatch_rejected(self):
        m = motive_of(P1)
        fs = FormalSum((m,))
        with pytest.raises(InvalidInputError):
            FormalSumMorphism(fs, fs, ((m.identity_morphism(), m.identity_morphism()),))


class TestOrbitCategory:
    def test_identity_neutral(self):
        rng = random.Random(151)
        m = motive_of(P1)
        for _ in range(20):
            corr = GradedCorrespondence(P1, P1, random_cycle_in_codims(rng, P1xP1, [0, 1, 2]))
            f = OrbitMorphism.from_graded(m, m, corr)
            assert orbit_compose(OrbitMorphism.identity(m), f) == f
            assert orbit_compose(f, OrbitMorphism.identity(m)) == f

    def test_concentrated_composition_lands_at_sum(self):
        m = motive_of(P1)
        f = OrbitMorphism(m, m, {1: GradedCorrespondence(P1, P1, Cycle.monomial(P1xP1, (1, 1)))})
        g = OrbitMorphism(m, m, {-1: GradedCorrespondence(P1, P1, Cycle.one(P1xP1))})
        composite = orbit_compose(f, g)
        assert composite.indices() == [0]

    def test_offset_zero_restriction_is_plain_composition(self):
        rng = random.Random(157)
        m, n, p = motive_of(P1), motive_of(P2), motive_of(P1)
        for _ in range(20):
            f = random_sandwiched_morphism(rng, m, n)
            g = random_sandwiched_morphism(rng, n, p)
            of = OrbitMorphism.from_morphism(f)
            og = OrbitMorphism.from_morphism(g)
            assert orbit_compose(of, og) == OrbitMorphism.from_morphism(compose_motive(f, g))

    def test_associativity(self):
        rng = random.Random(163)
        m = motive_of(P1)
        for _ in range(30):
            fs = []
            for _ in range(3):
                corr = GradedCorrespondence(P1, P1, random_cycle_in_codims(rng, P1xP1, [0, 1, 2]))
                fs.append(OrbitMorphism.from_graded(m, m, corr))
            f, g, h = fs
            assert orbit_compose(orbit_compose(f, g), h) == orbit_compose(f, orbit_compose(g, h))

    def test_degree_offset_consistency(self):
        # a component at offset i must be pure of degree (twist gap) + i
        l = lefschetz_motive()
        t = tate_motive()
        u = GradedCorrespondence(P1, POINT, Cycle.one(P1))
        morphism = OrbitMorphism(l, t, {0: u})
        assert morphism.component(0) == u
        with pytest.raises(InvalidInputError):
            OrbitMorphism(l, t, {1: u})


class TestDegreeZeroRigidify:
    def test_identity_pair(self):
        m = motive_of(P1)
        f0, g0 = degree_zero_rigidify(OrbitMorphism.identity(m), OrbitMorphism.identity(m))
        assert f0 == m.identity_morphism() and g0 == m.identity_morphism()

    def test_unipotent_pair_example(self):
        m = motive_of(P2)
        square = P2 * P2
        ident = GradedCorrespondence.identity(P2)
        # degree-1 perturbation whose self-composite survives, so the
        # inverse picks up an offset-2 component
        nil = GradedCorrespondence(
            P2, P2, Cycle.monomial(square, (2, 1)) + Cycle.monomial(square, (1, 2))
        )
        f = OrbitMorphism.from_graded(m, m, ident + nil)
        g = OrbitMorphism.from_graded(m, m, _geometric_inverse(ident, nil))
        assert f.indices() == [0, 1]
        assert g.indices() == [0, 1, 2]
        f0, g0 = degree_zero_rigidify(f, g)
        assert compose_motive(f0, g0) == m.identity_morphism()
        assert compose_motive(g0, f0) == m.identity_morphism()

    def test_not_mutually_inverse_rejected(self):
        m = motive_of(P1)
        ident = GradedCorrespondence.identity(P1)
        nil = GradedCorrespondence(P1, P1, Cycle.monomial(P1xP1, (1, 1)))
        f = OrbitMorphism.from_graded(m, m, ident + nil)
        with pytest.raises(PreconditionError):
            degree_zero_rigidify(f, OrbitMorphism.identity(m))

    def test_negative_component_rejected(self):
        m = motive_of(P1)
        ident = GradedCorrespondence.identity(P1)
        nil = GradedCorrespondence(P1, P1, Cycle.one(P1xP1))  # degree -1
        f = OrbitMorphism.from_graded(m, m, ident + nil)
        g = OrbitMorphism.from_graded(m, m, _geometric_inverse(ident, nil))
        with pytest.raises(SupportConditionError):
            degree_zero_rigidify(f, g)


class TestOrlovPipeline:
    def make_twist_kernel(self, d):
        square = P1 * P1
        base = identity_kernel(P1)
        twist = chern_character(line_bundle(square, [d, 0]))
        return KKernel.from_ch(P1, P1, base.ch * twist)

    def test_identity_pair_exact(self):
        ik = identity_kernel(P1)
        report = orlov_pipeline(ik, ik)
        assert report.verdict == "exact-isomorphism"
        f0, g0 = report.degree_zero_pair
        assert f0.corr == GradedCorrespondence.identity(P1)
        assert g0.corr == GradedCorrespondence.identity(P1)

    @pytest.mark.parametrize("d", [-2, -1, 1, 2])
    def test_twisted_kernels_exact(self, d):
        report = orlov_pipeline(self.make_twist_kernel(d), self.make_twist_kernel(-d))
        assert report.verdict == "exact-isomorphism"
        assert report.support_floors[0] >= 1 and report.support_floors[1] >= 1
        f0, g0 = report.degree_zero_pair
        assert compose_motive(f0, g0) == motive_of(P1).identity_morphism()

    def test_twisted_kernels_invert_under_composition(self):
        for d in range(-2, 3):
            composite = k_compose(self.make_twist_kernel(d), self.make_twist_kernel(-d))
            assert composite == identity_kernel(P1)

    def test_shifted_pair_reports_twist_only(self):
        from chowmot import series_inverse, sqrt_todd

        square = P1 * P1
        ident = GradedCorrespondence.identity(P1)
        shift = GradedCorrespondence(P1, P1, Cycle.one(square))
        back = series_inverse(sqrt_todd(square))
        e = KKernel.from_ch(P1, P1, (ident + shift).cycle * back)
        f = KKernel.from_ch(P1, P1, _geometric_inverse(ident, shift).cycle * back)
        report = orlov_pipeline(e, f)
        assert report.mutually_inverse and report.isomorphic_modulo_twist
        assert not report.support_ok
        assert report.verdict == "tate-twist-only"
        assert report.degree_zero_pair is None

    def test_non_inverse_pair(self):
        report = orlov_pipeline(self.make_twist_kernel(1), self.make_twist_kernel(1))
        assert report.verdict == "not-equivalent"
        assert not report.isomorphic_modulo_twist

    def test_dimension_mismatch_rejected(self):
        e = random_kernel(random.Random(5), P1, P2)
        f = random_kernel(random.Random(6), P2, P1)
        with pytest.raises(InvalidInputError):
            orlov_pipeline(e, f)


class TestCompatibility:
    def test_identity_kernels(self):
        for factors in [[1], [2], [1, 1]]:
            assert compatibility_check(identity_kernel(make_variety(factors)))

    def test_random_kernels(self):
        rng = random.Random(167)
        pool = [P1, P1xP1, P2]
        for _ in range(100):
            e = random_kernel(rng, rng.choice(pool), rng.choice(pool))
            assert compatibility_check(e)

    def test_corrupted_route_detected(self):
        e = KKernel.from_ch(P1, P1, Cycle.one(P1xP1) + random_kernel(random.Random(7), P1, P1).ch)
        bare = GradedCorrespondence(P1, P1, e.ch)
        assert not compatibility_check(e, chow_side=bare)

    def test_nc_hom_is_the_kernel_class(self):
        e = random_kernel(random.Random(11), P1, P2)
        assert nc_hom(e) == e.kclass

    def test_nc_hom_functorial(self):
        rng = random.Random(13)
        for _ in range(10):
            e = random_kernel(rng, P1, P1xP1)
            f = random_kernel(rng, P1xP1, P2)
            assert nc_hom(k_compose(e, f)) == k_compose(e, f).kclass

    def test_nc_hom_of_zero_kernel(self):
        zero = KKernel.from_ch(P1, P2, Cycle.zero(P1 * P2))
        assert nc_hom(zero).ch.is_zero


class TestMotiveJson:
    def test_round_trip(self):
        for m in [unit_motive(), motive_of(P1), lefschetz_motive(), tate_motive()]:
            assert Motive.from_json(m.to_json()) == m

    def test_orbit_round_trip(self):
        m = motive_of(P1)
        ident = GradedCorrespondence.identity(P1)
        nil = GradedCorrespondence(P1, P1, Cycle.monomial(P1xP1, (1, 1)))
        f = OrbitMorphism.from_graded(m, m, ident + nil)
        assert OrbitMorphism.from_json(f.to_json()) == f
