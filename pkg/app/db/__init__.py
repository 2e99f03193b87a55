"""Embedded dataset loading."""
