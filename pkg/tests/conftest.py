import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

# numerical kernels have data-dependent run times; deadlines only add flakiness
settings.register_profile("ortholab", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ortholab")
