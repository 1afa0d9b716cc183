"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""


__version__ = "0.1.1"
AUTHOR = "The hawkesweb developers"
AUTHOR_EMAIL = "hawkesweb@users.noreply.github.io"
NAME = "hawkesweb"
PACKAGE_URL = "https://github.com/hawkesweb/hawkesweb"
KEYWORDS = "hawkes,point process,influence,social media,url sharing,trolls"
DESCRIPTION = "cross-community influence estimation with per-URL Hawkes processes"
LICENSE = "LICENSE"

################################################################################
# Global requirements


INSTALL_REQUIRES = (
    ("numpy", {"min_version": "1.22.0"}),
    ("scipy", {"min_version": "1.8.0"}),
    ("pandas", {"min_version": "2.0.0"}),
    ("tldextract", {"min_version": "3.1.0"}),
)

TESTS_REQUIRES = (("pytest", {"min_version": "4.6.2"}),)


ALL_REQUIRES = INSTALL_REQUIRES
