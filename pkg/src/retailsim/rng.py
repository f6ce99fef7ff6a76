"""Named independent random substreams.

Each stream is seeded from a stable hash of (master_seed, stream name), so a
draw on one stream never perturbs another.  This is what makes properties
like "all-neutral news is indistinguishable from news disabled" literally
assertable: disabling news only removes draws from the news stream.
"""

import hashlib

import numpy as np

STREAM_NAMES = ("traffic", "demand", "leadtime", "news", "reviews", "catalog", "suppliers")


def stream_seed(master_seed: int, name: str) -> int:
    digest = hashlib.sha256(f"{master_seed}:{name}".encode()).digest()
    return int.from_bytes(digest[:8], "little")


class RngStreams:
    def __init__(self, master_seed: int, news_seed: int | None = None):
        self.master_seed = master_seed
        for name in STREAM_NAMES:
            if name == "news" and news_seed is not None:
                seed = stream_seed(stream_seed(master_seed, "news"), str(news_seed))
            else:
                seed = stream_seed(master_seed, name)
            setattr(self, name, np.random.default_rng(seed))
