"""Bahncard problem with short-term predictions: simulator, offline optimum and analysis."""
