import pytest
from hypothesis import given
from hypothesis import strategies as st

from tweettriage import Gazetteer, Tweet, load_gazetteer, tag_locations


def tweet(text):
    return Tweet(id="x", text=text, created_at=0.0)


def test_load(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("Manila\nTacloban\n")
    assert load_gazetteer(p).entries == ["Manila", "Tacloban"]
    p.write_text("Manila\nmanila\n# comment\n\n")
    assert load_gazetteer(p).entries == ["Manila"]


def test_empty_file_warns(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("")
    with pytest.warns(UserWarning, match="empty"):
        assert len(load_gazetteer(p)) == 0


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_gazetteer(tmp_path / "none.txt")


def test_longest_match():
    gaz = Gazetteer(["Quezon City", "Quezon"])
    assert tag_locations(tweet("baha sa quezon city"), gaz) == ["Quezon City"]
    assert tag_locations(tweet("Quezon province, then QUEZON   CITY"), gaz) == ["Quezon", "Quezon City"]


def test_no_match_and_dedupe():
    gaz = Gazetteer(["Manila"])
    assert tag_locations(tweet("walang pasok"), gaz) == []
    t = tweet("manila manila")
    assert tag_locations(t, gaz) == ["Manila"]
    assert t.locations == ["Manila"]


def test_whole_words_only():
    gaz = Gazetteer(["Naga"])
    assert gaz.find("nagalit siya") == []
    assert gaz.find("Naga, Camarines Sur") == ["Naga"]


def test_bundled_gazetteer(gazetteer):
    assert "Cagayan de Oro" in gazetteer
    assert gazetteer.find("Baha sa Cagayan de Oro at Parañaque") == ["Cagayan de Oro", "Parañaque"]


NAMES = ["San Juan", "San", "Juan Luna", "Manila", "Metro Manila", "Las Piñas"]
words = st.lists(st.sampled_from(["san", "juan", "luna", "manila", "metro", "las", "piñas", "baha", "sa"]),
                 max_size=12)


@given(words, st.lists(st.booleans(), min_size=12, max_size=12))
def test_properties(ws, upper):
    gaz = Gazetteer(NAMES)
    text = " ".join(w.upper() if u else w for w, u in zip(ws, upper))
    found = gaz.find(text)
    assert set(found) <= set(gaz.entries)
    assert found == gaz.find(" ".join(ws))
    spans = gaz.spans(text)
    for (s1, e1, _), (s2, e2, _) in zip(spans, spans[1:]):
        assert e1 <= s2
