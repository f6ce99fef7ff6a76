from retailsim.rng import STREAM_NAMES, RngStreams, stream_seed


def test_stream_seeds_distinct():
    seeds = {stream_seed(42, name) for name in STREAM_NAMES}
    assert len(seeds) == len(STREAM_NAMES)


def test_stream_seed_deterministic():
    assert stream_seed(42, "traffic") == stream_seed(42, "traffic")
    assert stream_seed(42, "traffic") != stream_seed(43, "traffic")


def test_streams_independent():
    a = RngStreams(7)
    b = RngStreams(7)
    # drawing heavily from one stream must not move another
    a.demand.random(10_000)
    assert a.traffic.integers(0, 1 << 30) == b.traffic.integers(0, 1 << 30)


def test_news_seed_override_only_touches_news():
    a = RngStreams(7)
    b = RngStreams(7, news_seed=99)
    assert a.traffic.random() == b.traffic.random()
    assert a.news.random() != b.news.random()
