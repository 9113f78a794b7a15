"""
Tests for customer profiles and store reports
"""

import json

import numpy as np
import pytest

from src.analytics import (
    DemographicKey,
    ReportWriter,
    age_share_by_gender,
    build_profiles,
    build_report,
    dwell_by_demographic,
    expression_by_color,
    garment_colors,
    garment_interest,
    gender_share,
    time_by_color,
)
from src.model import (
    AgeGroup,
    BBox,
    CustomerObservation,
    EmptyPopulationError,
    FrameAnnotations,
    GarmentObservation,
    Gender,
)
from src.tracking import AssociationInterval

FRAME_DURATION = 0.04
BOX = BBox(0, 0, 10, 10)


def observe(cid, frame, age, gender, expression="neutral"):
    return CustomerObservation(cid, frame, BOX, age, Gender(gender), expression)


def stream(observations, garments=(("g1", "Blue"), ("g2", "Pink")), n_frames=None):
    by_frame = {}
    for obs in observations:
        by_frame.setdefault(obs.frame, []).append(obs)
    last = n_frames if n_frames is not None else max(by_frame) + 1
    return [
        FrameAnnotations(
            frame=f,
            customers=tuple(by_frame.get(f, [])),
            garments=tuple(GarmentObservation(gid, f, BOX, color) for gid, color in garments),
        )
        for f in range(last)
    ]


@pytest.fixture
def population():
    """Three women and one man, seen over frames 0-9."""
    obs = []
    for f in range(10):
        obs.append(observe("c1", f, 25, "female", "happy" if f < 5 else "neutral"))
        obs.append(observe("c2", f, 40, "female"))
        if f < 4:
            obs.append(observe("c3", f, 12, "female", "sad"))
        if f >= 2:
            obs.append(observe("c4", f, 60, "male", "surprise"))
    return stream(obs)


def random_population(rng, n_customers=12, n_frames=40):
    obs = []
    for i in range(n_customers):
        cid = f"c{i}"
        age = int(rng.integers(0, 121))
        gender = ("female", "male")[int(rng.integers(2))]
        start = int(rng.integers(0, n_frames))
        end = int(rng.integers(start, n_frames))
        for f in range(start, end + 1):
            obs.append(observe(cid, f, age, gender, ("happy", "sad", "neutral")[int(rng.integers(3))]))
    frames = stream(obs, n_frames=n_frames)

    intervals = []
    profiles = build_profiles(frames)
    for cid, profile in profiles.items():
        for gid in ("g1", "g2"):
            if rng.random() < 0.6:
                start = int(rng.integers(profile.first_frame, profile.last_frame + 1))
                end = int(rng.integers(start, profile.last_frame + 1))
                intervals.append(AssociationInterval(cid, gid, start, end))
    return frames, intervals


def test_profiles_take_modal_values():
    frames = stream([
        observe("c1", 0, 30, "male"),
        observe("c1", 1, 31, "female"),
        observe("c1", 2, 31, "female"),
        observe("c1", 3, 30, "male"),
    ])
    profile = build_profiles(frames)["c1"]

    assert profile.age_years == 30
    assert profile.gender == Gender.FEMALE
    assert profile.age_group == AgeGroup.MIDDLE_AGED
    assert (profile.first_frame, profile.last_frame) == (0, 3)
    assert profile.presence_seconds(FRAME_DURATION) == pytest.approx(0.16)


def test_garment_color_ties_go_to_lowest_label():
    frames = [
        FrameAnnotations(0, (), (GarmentObservation("g1", 0, BOX, "Pink"),)),
        FrameAnnotations(1, (), (GarmentObservation("g1", 1, BOX, "Blue"),)),
    ]
    assert garment_colors(frames) == {"g1": "Blue"}


def test_gender_share(population):
    shares = gender_share(build_profiles(population))

    assert shares[Gender.FEMALE] == pytest.approx(75.0)
    assert shares[Gender.MALE] == pytest.approx(25.0)


def test_age_share_by_gender(population):
    shares = age_share_by_gender(build_profiles(population))

    assert shares[Gender.FEMALE] == pytest.approx({
        AgeGroup.CHILD: 100 / 3,
        AgeGroup.YOUTH: 100 / 3,
        AgeGroup.MIDDLE_AGED: 100 / 3,
    })
    assert shares[Gender.MALE] == {AgeGroup.ELDERLY: 100.0}


def test_single_gender_population_omits_the_other():
    frames = stream([observe("c1", 0, 20, "male")])

    assert gender_share(build_profiles(frames))[Gender.FEMALE] == 0.0
    assert Gender.FEMALE not in age_share_by_gender(build_profiles(frames))


def test_empty_population_raises():
    with pytest.raises(EmptyPopulationError):
        gender_share({})
    with pytest.raises(EmptyPopulationError):
        age_share_by_gender({})


def test_percentages_sum_to_100():
    rng = np.random.default_rng(8)
    for _ in range(30):
        frames, _ = random_population(rng)
        profiles = build_profiles(frames)
        assert sum(gender_share(profiles).values()) == pytest.approx(100.0, abs=1e-9)
        for shares in age_share_by_gender(profiles).values():
            assert sum(shares.values()) == pytest.approx(100.0, abs=1e-9)


def test_dwell_by_demographic(population):
    dwell = dwell_by_demographic(build_profiles(population), FRAME_DURATION)

    youth_female = dwell[DemographicKey(AgeGroup.YOUTH, Gender.FEMALE)]
    assert youth_female.customers == 1
    assert youth_female.mean == pytest.approx(10 * FRAME_DURATION)

    child = dwell[DemographicKey(AgeGroup.CHILD, Gender.FEMALE)]
    assert child.max == pytest.approx(4 * FRAME_DURATION)

    elderly_male = dwell[DemographicKey(AgeGroup.ELDERLY, Gender.MALE)]
    assert elderly_male.median == pytest.approx(8 * FRAME_DURATION)

    assert list(dwell) == sorted(dwell, key=DemographicKey.sort_key)


def test_dwell_additivity():
    rng = np.random.default_rng(13)
    frames, _ = random_population(rng, n_customers=30)
    profiles = build_profiles(frames)
    dwell = dwell_by_demographic(profiles, FRAME_DURATION)

    assert sum(s.customers for s in dwell.values()) == len(profiles)
    total = sum(s.mean * s.customers for s in dwell.values())
    assert total == pytest.approx(sum(p.presence_seconds(FRAME_DURATION) for p in profiles.values()))
    for stats in dwell.values():
        assert stats.min <= stats.median <= stats.max
        assert stats.min <= stats.mean <= stats.max


def test_expression_by_color(population):
    profiles = build_profiles(population)
    colors = garment_colors(population)
    intervals = [AssociationInterval("c1", "g1", 3, 6), AssociationInterval("c4", "g2", 0, 3)]

    records = expression_by_color(profiles, intervals, colors)
    counts = {(r.gender, r.age_years, r.color, r.expression): r.count for r in records}

    assert counts == {
        (Gender.FEMALE, 25, "Blue", "happy"): 2,
        (Gender.FEMALE, 25, "Blue", "neutral"): 2,
        # c4 is only observed from frame 2
        (Gender.MALE, 60, "Pink", "surprise"): 2,
    }


def test_scatter_conservation():
    rng = np.random.default_rng(17)
    for _ in range(20):
        frames, intervals = random_population(rng)
        profiles = build_profiles(frames)
        records = expression_by_color(profiles, intervals, garment_colors(frames))

        observed_frames = sum(
            sum(1 for f in range(i.start_frame, i.end_frame + 1) if f in profiles[i.customer_id].expressions)
            for i in intervals
        )
        assert sum(r.count for r in records) == observed_frames


def test_time_by_color_additivity():
    rng = np.random.default_rng(19)
    for _ in range(20):
        frames, intervals = random_population(rng)
        profiles = build_profiles(frames)
        totals = time_by_color(profiles, intervals, garment_colors(frames), FRAME_DURATION)

        assert sum(totals.values()) == pytest.approx(
            sum(i.duration_seconds(FRAME_DURATION) for i in intervals)
        )
        shuffled = list(intervals)
        rng.shuffle(shuffled)
        assert time_by_color(profiles, shuffled, garment_colors(frames), FRAME_DURATION) == totals


def test_time_by_color_groups_demographics(population):
    profiles = build_profiles(population)
    intervals = [
        AssociationInterval("c1", "g1", 0, 4),
        AssociationInterval("c1", "g2", 0, 1),
        AssociationInterval("c4", "g1", 2, 9),
    ]
    totals = time_by_color(profiles, intervals, garment_colors(population), FRAME_DURATION)

    assert totals == pytest.approx({
        (DemographicKey(AgeGroup.YOUTH, Gender.FEMALE), "Blue"): 5 * FRAME_DURATION,
        (DemographicKey(AgeGroup.YOUTH, Gender.FEMALE), "Pink"): 2 * FRAME_DURATION,
        (DemographicKey(AgeGroup.ELDERLY, Gender.MALE), "Blue"): 8 * FRAME_DURATION,
    })


def test_intervals_for_unknown_customers_are_skipped(population):
    profiles = build_profiles(population)
    intervals = [AssociationInterval("ghost", "g1", 0, 3)]

    assert expression_by_color(profiles, intervals, garment_colors(population)) == []
    assert time_by_color(profiles, intervals, garment_colors(population), FRAME_DURATION) == {}
    assert garment_interest(profiles, intervals, garment_colors(population), FRAME_DURATION) == {}


def test_garment_interest(population):
    intervals = [
        AssociationInterval("c1", "g1", 0, 4),
        AssociationInterval("c2", "g1", 0, 1),
        AssociationInterval("c1", "g1", 7, 9),
        AssociationInterval("c4", "g3", 2, 2),
    ]
    interest = garment_interest(build_profiles(population), intervals, garment_colors(population), FRAME_DURATION)

    assert interest["g1"].customers == 2
    assert interest["g1"].seconds == pytest.approx(10 * FRAME_DURATION)
    assert interest["g1"].color == "Blue"
    assert interest["g3"].color == "unknown"


def test_report_bundle_and_writer(population, tmp_path):
    intervals = [AssociationInterval("c1", "g1", 0, 9)]
    bundle = build_report(population, intervals, FRAME_DURATION)
    paths = ReportWriter(str(tmp_path)).write_all(bundle)

    names = sorted(p.split("/")[-1] for p in paths)
    assert names == sorted([
        "report.json", "fig2a.csv", "fig2b.csv", "fig2c.csv", "fig3.csv",
        "fig4_female.csv", "fig4_male.csv", "fig5_female.csv", "fig5_male.csv", "garments.csv",
    ])

    report = json.loads((tmp_path / "report.json").read_text())
    assert report["gender_share"] == pytest.approx({"female": 75.0, "male": 25.0})
    assert (tmp_path / "fig2a.csv").read_text() == "gender,percentage\nfemale,75\nmale,25\n"
    assert (tmp_path / "fig4_male.csv").read_text() == "age_years,color,expression,count\n"
    assert (tmp_path / "fig5_female.csv").read_text() == "age_group,color,seconds\nyouth,Blue,0.4\n"


def test_report_on_empty_stream_raises():
    frames = [FrameAnnotations(0, (), ())]
    with pytest.raises(EmptyPopulationError):
        build_report(frames, [], FRAME_DURATION)


def test_overlapping_associations_count_once_per_garment():
    frames = stream([observe("c1", f, 40, "female", "happy") for f in range(10)])
    profiles = build_profiles(frames)
    intervals = [AssociationInterval("c1", "g1", 0, 9), AssociationInterval("c1", "g2", 0, 9)]

    records = expression_by_color(profiles, intervals, garment_colors(frames))

    assert [(r.color, r.count) for r in records] == [("Blue", 10), ("Pink", 10)]
    assert expression_by_color(profiles, [], garment_colors(frames)) == []


def test_time_by_color_of_one_interval():
    frames = stream([observe("c1", f, 40, "female") for f in range(60)])
    totals = time_by_color(build_profiles(frames), [AssociationInterval("c1", "g2", 5, 54)],
                           garment_colors(frames), FRAME_DURATION)

    assert totals == {(DemographicKey(AgeGroup.MIDDLE_AGED, Gender.FEMALE), "Pink"): pytest.approx(2.0)}


def test_single_frame_customer_dwells_one_frame():
    frames = stream([observe("c1", 3, 40, "male")])
    dwell = dwell_by_demographic(build_profiles(frames), FRAME_DURATION)

    assert dwell[DemographicKey(AgeGroup.MIDDLE_AGED, Gender.MALE)].max == pytest.approx(FRAME_DURATION)


def test_dwell_median_of_even_sample():
    obs = [observe("c1", f, 40, "male") for f in range(50)]
    obs += [observe("c2", f, 41, "male") for f in range(100)]
    dwell = dwell_by_demographic(build_profiles(stream(obs)), FRAME_DURATION)
    stats = dwell[DemographicKey(AgeGroup.MIDDLE_AGED, Gender.MALE)]

    assert stats.mean == pytest.approx(3.0)
    assert stats.median == pytest.approx(3.0)


def test_garment_interest_ignores_unknown_customers(population):
    intervals = [AssociationInterval("c1", "g1", 0, 1), AssociationInterval("ghost", "g1", 0, 9)]
    interest = garment_interest(build_profiles(population), intervals, garment_colors(population), FRAME_DURATION)

    assert interest["g1"].customers == 1
    assert interest["g1"].seconds == pytest.approx(2 * FRAME_DURATION)


def test_equal_age_shares_are_written_exactly(tmp_path):
    frames = stream([observe("c1", 0, 10, "female"), observe("c2", 0, 20, "female"),
                     observe("c3", 0, 40, "female")])
    ReportWriter(str(tmp_path)).write_all(build_report(frames, [], FRAME_DURATION))

    rows = [row.split(",") for row in (tmp_path / "fig2b.csv").read_text().splitlines()[1:]]
    assert [group for group, _ in rows] == ["child", "youth", "middle_aged"]
    assert sum(float(pct) for _, pct in rows) == pytest.approx(100.0, abs=1e-9)
    assert (tmp_path / "fig2a.csv").read_text() == "gender,percentage\nfemale,100\n"
