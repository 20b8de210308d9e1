"""Workbench for auditing package-registry metadata and topic-modeling survey answers.

Stages are wired through file handoffs: registry snapshot -> link audit ->
dependency ranking -> ecosystem report, and response store -> topic runs ->
robustness / evaluation reports. Every stage runs offline against recorded
fixtures or the built-in mock model client.
"""

__version__ = "0.1.0"
