import pytest
from hypothesis import given, strategies as st

from cohesia.factors import (DEFAULTS, ENUMS, UNSUPPORTED, EngineParams, ProfileError, Unsupported, parse_profile,
                             resolve, serialize_profile)

FULL = """\
input.structure=headed_source
input.scale=1200
input.medium=en
input.genre=news
input.subject=specialised
input.unit=single
purpose.situation=tied
purpose.audience=targetted
purpose.use=retrieving
output.material=covering
output.format=headed
output.style=indicative
"""


def test_empty_profile_defaults():
    assert parse_profile("").values == DEFAULTS


def test_full_profile_verbatim():
    p = parse_profile(FULL)
    assert p["input.scale"] == 1200
    assert p["purpose.use"] == "retrieving"
    assert serialize_profile(p) == FULL


def test_comments_and_blank_lines():
    p = parse_profile("# a comment\n\noutput.format = headed\n")
    assert p["output.format"] == "headed"


@pytest.mark.parametrize("text,needle", [
    ("output.style=criticall", "output.style"),
    ("output.style=criticall", "criticall"),
    ("purpose.colour=red", "unknown field"),
    ("output.format", "key=value"),
    ("input.scale=lots", "input.scale"),
    ("input.scale=0", "input.scale"),
    ("output.format=running\noutput.format=headed", "twice"),
])
def test_profile_errors(text, needle):
    with pytest.raises(ProfileError) as exc:
        parse_profile(text)
    assert needle in str(exc.value)


@pytest.mark.parametrize("use,ratio,projection", [
    ("retrieving", 0.05, "keyterms"), ("prompt", 0.05, "keyterms"),
    ("previewing", 0.10, "predications"), ("refreshing", 0.10, "predications"),
])
def test_use_table(use, ratio, projection):
    params = resolve(parse_profile(f"purpose.use={use}"))
    assert params.compression_ratio == ratio
    assert params.projection_mode == projection


def test_format_copied_and_metadata_recorded():
    params = resolve(parse_profile(FULL))
    assert params.output_format == "headed"
    assert params.metadata["input.genre"] == "news"
    assert params.metadata["purpose.audience"] == "targetted"
    assert params.edge_weights == EngineParams().edge_weights


@pytest.mark.parametrize("field,value", [
    ("output.style", "informative"), ("output.style", "critical"), ("output.style", "aggregative"),
    ("output.material", "partial"), ("input.unit", "multiple"), ("purpose.use", "substitute"),
])
def test_unsupported(field, value):
    with pytest.raises(Unsupported) as exc:
        resolve(parse_profile(f"{field}={value}"))
    assert exc.value.field == field
    assert field in str(exc.value)


def test_engine_params_validation():
    with pytest.raises(ValueError):
        EngineParams(compression_ratio=0.0)
    with pytest.raises(ValueError):
        EngineParams(compression_ratio=0.6)
    with pytest.raises(ValueError):
        EngineParams(output_format="bullets")


profiles = st.fixed_dictionaries({k: st.sampled_from(v) for k, v in ENUMS.items()}).map(
    lambda d: "".join(f"{k}={v}\n" for k, v in d.items()))


@given(profiles, st.one_of(st.none(), st.integers(min_value=1, max_value=10**6)))
def test_round_trip_and_total(text, scale):
    if scale is not None:
        text += f"input.scale={scale}\n"
    p = parse_profile(text)
    assert parse_profile(serialize_profile(p)) == p
    gated = any(p[k] in bad for k, (bad, _) in UNSUPPORTED.items())
    if gated:
        with pytest.raises(Unsupported):
            resolve(p)
    else:
        assert isinstance(resolve(p), EngineParams)
