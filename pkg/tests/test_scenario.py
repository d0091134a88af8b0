import json
import math

import jsonschema
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as hs

from summoner.scenario import (
    DEMO_NAMES,
    Finding,
    Scenario,
    Variant,
    errors,
    load,
    make_demo,
    return_points,
    save,
    validate,
)
from summoner.spacetime import (
    Boost,
    Event,
    Physics,
    Regime,
    Separation,
    Spacetime,
    boost,
    causally_precedes,
    interval,
    proper_time,
)

MQ = Regime(spacetime=Spacetime.MINKOWSKI, physics=Physics.QUANTUM)


def hyperboloid_scenario(t_prime=2.0, delta=0.1, rapidities=(0.0, 0.5, -0.8)):
    """Lorentz-invariant scenario: candidates at one proper time from P."""
    P = Event(0.0, (0.0,))
    candidates = tuple(
        Event(t_prime * math.cosh(chi), (t_prime * math.sinh(chi),))
        for chi in rapidities
    )
    return Scenario(
        regime=MQ, d=2, n=1, variant=Variant.LORENTZ_INVARIANT,
        P=P, candidates=candidates, t_prime=t_prime, delta=delta, seed=0,
    )


class TestDemos:
    @pytest.mark.parametrize("name", DEMO_NAMES)
    def test_demos_validate_without_errors(self, name):
        assert errors(validate(make_demo(name))) == []

    def test_antipodal_pair_geometry(self):
        s = make_demo("antipodal_pair")
        assert s.num_candidates == 2
        assert interval(*s.candidates).kind is Separation.SPACELIKE
        assert validate(s) == []

    def test_timelike_chain_consecutive(self):
        s = make_demo("timelike_chain")
        for a, b in zip(s.candidates, s.candidates[1:]):
            assert causally_precedes(a, b, s.regime)

    def test_sphere_radius(self):
        s = make_demo("sphere")
        assert s.num_candidates == 8
        for q in s.candidates:
            assert q.t == 5.0
            assert math.dist(q.x, s.P.x) == pytest.approx(4.0, abs=1e-9)

    def test_unknown_name(self):
        with pytest.raises(ValueError, match="unknown demo"):
            make_demo("nosuch")


class TestValidate:
    def test_candidate_before_p_is_error(self):
        s = make_demo("antipodal_pair")
        bad = Scenario(
            regime=s.regime, d=s.d, n=s.n, variant=s.variant, P=s.P,
            candidates=(Event(-1.0, (0.0,)),) + s.candidates,
            t_prime=s.t_prime, delta=s.delta, seed=s.seed,
        )
        msgs = [f.message for f in errors(validate(bad))]
        assert any("candidate 0" in m for m in msgs)

    def test_large_delay_warns(self):
        base = make_demo("sphere")
        s = Scenario(
            regime=base.regime, d=base.d, n=base.n, variant=base.variant,
            P=base.P, candidates=base.candidates, t_prime=3.0, delta=1.0,
            seed=0,
        )
        findings = validate(s)
        assert errors(findings) == []
        assert any(f.level == "warning" and "delta/r" in f.message for f in findings)

    def test_quantum_needs_d2(self):
        s = make_demo("antipodal_pair")
        bad = Scenario(
            regime=s.regime, d=1, n=s.n, variant=s.variant, P=s.P,
            candidates=s.candidates, t_prime=s.t_prime, delta=s.delta, seed=0,
        )
        assert any("d >= 2" in f.message for f in errors(validate(bad)))

    def test_hyperboloid_valid(self):
        assert errors(validate(hyperboloid_scenario())) == []

    def test_hyperboloid_wrong_proper_time(self):
        s = hyperboloid_scenario()
        bad = Scenario(
            regime=s.regime, d=s.d, n=s.n, variant=s.variant, P=s.P,
            candidates=s.candidates + (Event(5.0, (0.0,)),),
            t_prime=s.t_prime, delta=s.delta, seed=0,
        )
        assert any("proper time" in f.message for f in errors(validate(bad)))


class TestReturnPoints:
    def test_zero_delta_identity(self):
        s = make_demo("antipodal_pair")
        for rp in return_points(s):
            assert rp.R == s.candidates[rp.candidate_index]

    def test_frame_slice_shift(self):
        base = make_demo("antipodal_pair")
        s = Scenario(
            regime=base.regime, d=base.d, n=base.n, variant=base.variant,
            P=base.P, candidates=(Event(1.0, (1.0,)),), t_prime=0.0,
            delta=0.2, seed=0,
        )
        (rp,) = return_points(s)
        assert rp.R == Event(1.2, (1.0,))

    def test_colinear_variant(self):
        P = Event(0.0, (0.0, 0.0, 0.0))
        s = Scenario(
            regime=MQ, d=2, n=3, variant=Variant.LORENTZ_INVARIANT, P=P,
            candidates=(Event(5.0, (3.0, 0.0, 0.0)),), t_prime=4.0, delta=4.0,
            seed=0,
        )
        (rp,) = return_points(s)
        assert rp.R == Event(10.0, (6.0, 0.0, 0.0))

    @pytest.mark.parametrize("name", DEMO_NAMES)
    def test_order_and_causality(self, name):
        s = make_demo(name)
        rps = return_points(s)
        assert [rp.candidate_index for rp in rps] == list(range(s.num_candidates))
        for rp in rps:
            assert causally_precedes(s.candidates[rp.candidate_index], rp.R, s.regime)

    @given(hs.floats(min_value=-0.9, max_value=0.9))
    @settings(max_examples=50, deadline=None)
    def test_hyperboloid_boost_invariance(self, v):
        s = hyperboloid_scenario()
        b = Boost((v,))
        boosted = Scenario(
            regime=s.regime, d=s.d, n=s.n, variant=s.variant,
            P=boost(s.P, b), candidates=tuple(boost(q, b) for q in s.candidates),
            t_prime=s.t_prime, delta=s.delta, seed=s.seed,
        )
        assert errors(validate(boosted)) == []
        for q in boosted.candidates:
            assert proper_time(boosted.P, q) == pytest.approx(s.t_prime, abs=1e-9)


class TestSerialization:
    @pytest.mark.parametrize("name", DEMO_NAMES)
    def test_round_trip(self, name, tmp_path):
        s = make_demo(name)
        path = tmp_path / "s.json"
        save(s, str(path))
        assert load(str(path)) == s

    def test_unknown_field_rejected(self):
        data = make_demo("antipodal_pair").to_dict()
        data["extra"] = 1
        with pytest.raises(jsonschema.ValidationError):
            Scenario.from_dict(data)

    def test_bad_variant_rejected(self):
        data = make_demo("antipodal_pair").to_dict()
        data["variant"] = "spherical"
        with pytest.raises(jsonschema.ValidationError):
            Scenario.from_dict(data)

    def test_missing_field_rejected(self):
        data = make_demo("antipodal_pair").to_dict()
        del data["seed"]
        with pytest.raises(jsonschema.ValidationError):
            Scenario.from_dict(data)
