"""
NightFusion Servo - Source Package

Thermal-guided low-light fusion, PID pan servoing, closed-loop simulation
and tracking metrics.
"""

__version__ = "1.0.0"
__author__ = "NightFusion Team"
__description__ = "Thermal-visible fusion and visual servoing toolkit"
