from hypothesis import HealthCheck, settings

# one deterministic profile for the whole suite: replayable, no deadline
# flakiness on slower runners
settings.register_profile(
    "slowvortex",
    deadline=None,
    derandomize=True,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("slowvortex")
