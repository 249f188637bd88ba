"""Konstrukce aproximace: typy čepiček, pokrytí, vrstvy, svědci a sběrače, základní metody."""
