"""Randomized suites (500 examples each, derandomized); see props.py."""

import props


def test_normal_form_idempotence():
    props.check_nf_idempotent()


def test_membership_soundness():
    props.check_membership_vs_bruteforce()


def test_buchberger_shuffle_canonical():
    props.check_buchberger_shuffle()


def test_saturation_idempotent_monotone():
    props.check_saturation()


def test_hilbert_vs_enumeration():
    props.check_hilbert_vs_enumeration()


def test_reduction_dimension_additivity():
    props.check_dimension_additivity()
