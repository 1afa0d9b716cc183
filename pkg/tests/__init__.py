"""Unit test package for hawkesweb."""
