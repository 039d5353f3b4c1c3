"""Finite time-frequency localization operators and the Berezin transform on Z_N."""
