"""Kannada NERC - Named Entity Recognition and Classification with Multinomial Naive Bayes.

SPDX-License-Identifier: MIT
"""

__version__ = "1.0.0"
