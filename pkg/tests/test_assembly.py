import pytest

from ribboncalc import (
    BUILTIN_TEMPLATE_NAMES,
    IceQuiver,
    LocalTemplate,
    QuiverArrow,
    QuiverVertex,
    RibbonGraph,
    TemplateSlot,
    assemble_global,
    basicness_check,
    builtin_template,
    quivers_isomorphic,
    serialize,
    star_template,
    tagged_triangulation,
    to_jsonable,
    validate_template,
)


class TestBuiltinTemplates:
    def test_registry(self):
        assert BUILTIN_TEMPLATE_NAMES == (
            "a2_trivalent",
            "punctured_2gon_T1",
            "punctured_2gon_T2",
            "punctured_2gon_T3",
            "punctured_2gon_T4",
            "rank1_trivalent",
        )

    def test_unknown_name(self):
        with pytest.raises(ValueError, match="unknown template"):
            builtin_template("rank9000")

    def test_rank1_exact(self):
        q = builtin_template("rank1_trivalent").quiver
        assert q == IceQuiver(
            [
                QuiverVertex("1", frozen=True),
                QuiverVertex("2", frozen=True),
                QuiverVertex("3", frozen=True),
            ],
            [
                QuiverArrow("c1", "2", "1"),
                QuiverArrow("c2", "3", "2"),
                QuiverArrow("c3", "1", "3"),
            ],
        )

    def test_a2_counts(self):
        q = builtin_template("a2_trivalent").quiver
        assert len(q.vertices) == 7
        assert len(q.frozen_vertex_ids()) == 6
        assert len(q.frozen_components()) == 3
        assert len(q.arrows) == 12
        assert sum(1 for a in q.arrows if a.frozen) == 3

    def test_a2_matches_figure(self, a2_triangle_figure):
        q = builtin_template("a2_trivalent").quiver
        assert quivers_isomorphic(q, a2_triangle_figure)

    def test_punctured_cycle_pair(self):
        t1 = builtin_template("punctured_2gon_T1").quiver
        t2 = builtin_template("punctured_2gon_T2").quiver
        expect = IceQuiver(
            [
                QuiverVertex("1", frozen=True),
                QuiverVertex("2"),
                QuiverVertex("3"),
                QuiverVertex("4", frozen=True),
            ],
            [
                QuiverArrow("a1", "1", "2"),
                QuiverArrow("a2", "2", "4"),
                QuiverArrow("a3", "4", "3"),
                QuiverArrow("a4", "3", "1"),
            ],
        )
        assert t1 == expect
        assert t2 == expect

    def test_punctured_flip_pair(self):
        t3 = builtin_template("punctured_2gon_T3").quiver
        t4 = builtin_template("punctured_2gon_T4").quiver
        expect = IceQuiver(
            [
                QuiverVertex("1", frozen=True),
                QuiverVertex("2"),
                QuiverVertex("3"),
                QuiverVertex("4", frozen=True),
            ],
            [
                QuiverArrow("a1", "1", "4"),
                QuiverArrow("a2", "4", "2"),
                QuiverArrow("a3", "2", "1"),
                QuiverArrow("a4", "4", "3"),
                QuiverArrow("a5", "3", "1"),
            ],
        )
        assert t3 == expect
        assert t4 == expect

    def test_all_templates_validate(self):
        for name in BUILTIN_TEMPLATE_NAMES:
            validate_template(builtin_template(name))

    def test_star_template(self):
        t = star_template(5)
        assert t.valency == 5
        assert len(t.quiver.vertices) == 6
        with pytest.raises(ValueError, match="at least 2"):
            star_template(1)

    def test_slot_morphisms_are_valid(self):
        t = builtin_template("a2_trivalent")
        for i in range(t.valency):
            m = t.slot_morphism(i)
            assert m.target == t.quiver


class TestValidateTemplate:
    def test_image_must_be_a_frozen_component(self):
        quiver = IceQuiver(
            [QuiverVertex("m"), QuiverVertex("x", frozen=True), QuiverVertex("y", frozen=True)],
            [],
        )
        point = IceQuiver([QuiverVertex("u", frozen=True)], [])
        slots = (
            TemplateSlot(point, {"u": "x"}, {}),
            TemplateSlot(point, {"u": "y"}, {}),
        )
        validate_template(LocalTemplate("ok", quiver, slots))
        with pytest.raises(ValueError, match="slot 1"):
            validate_template(
                LocalTemplate("dup", quiver, (slots[0], slots[0]))
            )

    def test_uncovered_frozen_vertex(self):
        quiver = IceQuiver(
            [QuiverVertex("m"), QuiverVertex("x", frozen=True), QuiverVertex("y", frozen=True)],
            [],
        )
        point = IceQuiver([QuiverVertex("u", frozen=True)], [])
        with pytest.raises(ValueError, match="belong to no slot"):
            validate_template(
                LocalTemplate("gap", quiver, (TemplateSlot(point, {"u": "x"}, {}),))
            )


class TestAssemble:
    def test_two_triangles_rank1(self):
        g = RibbonGraph(
            {"u": ("u1", "u2", "u3"), "w": ("w1", "w2", "w3")},
            {"u1": "w1", "w1": "u1"},
        )
        q = assemble_global(g, {"u": "rank1_trivalent", "w": "rank1_trivalent"})
        assert len(q.vertices) == 5
        assert len(q.frozen_vertex_ids()) == 4
        assert len(q.arrows) == 6
        assert not any(a.frozen for a in q.arrows)

    def test_four_gon_a2(self, four_gon, a2_four_gon_figure):
        q = assemble_global(four_gon, {"v1": "a2_trivalent", "v2": "a2_trivalent"})
        assert len(q.vertices) == 12
        assert len(q.frozen_vertex_ids()) == 8
        assert len(q.arrows) == 22
        assert sum(1 for a in q.arrows if a.frozen) == 4
        assert quivers_isomorphic(q, a2_four_gon_figure)

    def test_four_gon_glued_pair_is_unlinked(self, four_gon):
        # the two interface identifications leave no arrow between them
        q = assemble_global(four_gon, {"v1": "a2_trivalent", "v2": "a2_trivalent"})
        glued = {"v1.f0", "v1.r0"}
        assert glued <= set(q.vertex_ids())
        between = [
            a for a in q.arrows if {a.src, a.dst} == glued
        ]
        assert between == []

    def test_once_punctured_4gon(self, once_punctured_4gon):
        q = assemble_global(
            once_punctured_4gon,
            {"w1": "rank1_trivalent", "p": "punctured_2gon_T1", "w2": "rank1_trivalent"},
        )
        assert len(q.vertices) == 8
        assert len(q.frozen_vertex_ids()) == 4
        assert len(q.arrows) == 10
        assert not any(a.frozen for a in q.arrows)

    def test_single_vertex_keeps_its_template(self, two_spider):
        # nothing to glue: the result is the local quiver, names qualified
        q = assemble_global(two_spider, {"v": "punctured_2gon_T2"})
        assert q.vertex_ids() == ("v.1", "v.2", "v.3", "v.4")
        assert q.frozen_vertex_ids() == ("v.1", "v.4")
        assert quivers_isomorphic(q, builtin_template("punctured_2gon_T2").quiver)

    def test_missing_template(self, four_gon):
        with pytest.raises(ValueError, match="has no template"):
            assemble_global(four_gon, {"v1": "a2_trivalent"})

    def test_valency_mismatch(self, two_spider):
        with pytest.raises(ValueError, match="valency"):
            assemble_global(two_spider, {"v": "rank1_trivalent"})

    def test_interface_mismatch(self, four_gon):
        with pytest.raises(ValueError, match="do not match"):
            assemble_global(
                four_gon, {"v1": "a2_trivalent", "v2": star_template(3)}
            )

    def test_inline_template_assignment(self, four_gon):
        q = assemble_global(four_gon, {v: star_template(3) for v in four_gon.vertices})
        assert len(q.vertices) == 7


class TestBasicness:
    def test_flags_plain_2_valent(self):
        g = RibbonGraph(
            {"w1": ("w1p", "w1a", "w1b"), "p": ("pw2", "pw1"), "w2": ("w2a", "w2p", "w2b")},
            {"w1p": "pw1", "pw1": "w1p", "pw2": "w2p", "w2p": "pw2"},
        )
        warnings = basicness_check(g)
        assert warnings == [
            "vertex p is 2-valent and plain: the objects induced along "
            "its two edges may coincide"
        ]

    def test_silent_on_punctures_and_trivalents(self, once_punctured_4gon, four_gon):
        assert basicness_check(once_punctured_4gon) == []
        assert basicness_check(four_gon) == []

    def test_checks_assignment_when_given(self, four_gon):
        with pytest.raises(ValueError, match="has no template"):
            basicness_check(four_gon, {"v1": "a2_trivalent"})


class TestTaggedTriangulation:
    def test_two_spider_all_choices_distinct(self, two_spider):
        seen = set()
        for choice in ("T1", "T2", "T3", "T4"):
            arcs = tagged_triangulation(two_spider, {"v": choice})
            assert len(arcs) == 2
            seen.add(serialize([to_jsonable(a) for a in arcs]))
        assert len(seen) == 4

    def test_two_spider_taggings(self, two_spider):
        picks = {
            "T1": [("h1", "plain"), ("h2", "plain")],
            "T2": [("h1", "notched"), ("h2", "notched")],
            "T3": [("h1", "notched"), ("h1", "plain")],
            "T4": [("h2", "notched"), ("h2", "plain")],
        }
        for choice, expect in picks.items():
            arcs = tagged_triangulation(two_spider, {"v": choice})
            assert [(a.via, a.tagging) for a in arcs] == expect

    def test_once_punctured_4gon_arcs(self, once_punctured_4gon):
        arcs = tagged_triangulation(once_punctured_4gon, {"p": "T1"})
        assert len(arcs) == 4
        duals = [a for a in arcs if a.kind == "dual"]
        assert sorted(a.edge for a in duals) == ["pw1", "pw2"]
        punct = [a for a in arcs if a.kind == "puncture"]
        assert [(a.via, a.tagging) for a in punct] == [
            ("pw1", "plain"),
            ("pw2", "plain"),
        ]
        # puncture arcs leave the puncture clockwise
        assert punct[0].path.edges == ("pw1", "w1a")
        assert punct[1].path.edges == ("pw2", "w2b")

    def test_arc_count_identity(self, once_punctured_4gon, two_spider):
        for g, choices in (
            (once_punctured_4gon, {"p": "T1"}),
            (two_spider, {"v": "T3"}),
        ):
            punctures = [v for v in g.vertices if g.valency(v) == 2]
            arcs = tagged_triangulation(g, choices)
            assert len(arcs) == len(g.internal_edges()) + 2 * len(punctures)

    def test_plain_2_valent_vertex_rejected(self):
        g = RibbonGraph(
            {"w1": ("w1p", "w1a", "w1b"), "p": ("pw2", "pw1"), "w2": ("w2a", "w2p", "w2b")},
            {"w1p": "pw1", "pw1": "w1p", "pw2": "w2p", "w2p": "pw2"},
        )
        with pytest.raises(ValueError, match="must be singular"):
            tagged_triangulation(g, {"p": "T1"})

    def test_missing_choice(self, once_punctured_4gon):
        with pytest.raises(ValueError, match="has no T1..T4 choice"):
            tagged_triangulation(once_punctured_4gon, {})

    def test_all_trivalent_needs_no_choices(self, annulus):
        arcs = tagged_triangulation(annulus, {})
        assert [a.kind for a in arcs] == ["dual"] * 5

    def test_wrong_valency(self):
        g = RibbonGraph(
            {"u": ("uz", "ua", "ux", "ub"), "w": ("wy", "wa", "wb")},
            {"ua": "wa", "wa": "ua", "ub": "wb", "wb": "ub"},
        )
        with pytest.raises(ValueError, match="trivalent"):
            tagged_triangulation(g, {})

    def test_choice_for_non_puncture(self, once_punctured_4gon):
        with pytest.raises(ValueError, match="non-puncture"):
            tagged_triangulation(once_punctured_4gon, {"p": "T1", "w1": "T2"})

    def test_unknown_choice(self, once_punctured_4gon):
        with pytest.raises(ValueError, match="unknown puncture choice"):
            tagged_triangulation(once_punctured_4gon, {"p": "T9"})
