"""Test suite for the monres package."""
