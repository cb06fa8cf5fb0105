"""Kazhdan-Lusztig cells, the asymptotic Hecke algebra and positive special modules."""
