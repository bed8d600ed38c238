"""Waveform reconstruction from event streams."""

from .pwl import AnchorPoint, decode_anchors, pwl_reconstruct, reconstruct_stream, rms_error, max_abs_error
