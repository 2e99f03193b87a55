"""Exact-arithmetic verification of the Pfaffian Calabi-Yau 3-fold mirror prediction."""
