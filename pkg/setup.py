#!/usr/bin/env python

"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""


import os

from setuptools import find_packages, setup


def get_lookup():
    """read hawkesweb/version.py into a dictionary of globals, so metadata and
    requirement tuples have a single home.
    """
    lookup = dict()
    version_file = os.path.join("hawkesweb", "version.py")
    with open(version_file) as filey:
        exec(filey.read(), lookup)
    return lookup


def get_reqs(lookup=None, key="INSTALL_REQUIRES"):
    """turn a tuple of (name, {"min_version"|"exact_version": ...}) pairs into
    pip requirement strings.
    """
    lookup = lookup or get_lookup()

    requires = []
    for name, meta in lookup[key]:
        if meta.get("exact_version"):
            requires.append("%s==%s" % (name, meta["exact_version"]))
        elif meta.get("min_version"):
            requires.append("%s>=%s" % (name, meta["min_version"]))
        else:
            requires.append(name)
    return requires


# Make sure everything is relative to setup.py
install_path = os.path.dirname(os.path.abspath(__file__))
os.chdir(install_path)

lookup = get_lookup()
with open("README.md") as filey:
    LONG_DESCRIPTION = filey.read()

################################################################################
# MAIN #########################################################################
################################################################################

if __name__ == "__main__":

    setup(
        name=lookup["NAME"],
        version=lookup["__version__"],
        author=lookup["AUTHOR"],
        author_email=lookup["AUTHOR_EMAIL"],
        maintainer=lookup["AUTHOR"],
        maintainer_email=lookup["AUTHOR_EMAIL"],
        packages=find_packages(exclude=["tests", "examples", "examples.*"]),
        include_package_data=True,
        package_data={"hawkesweb.main.config": ["*.ini"]},
        zip_safe=False,
        url=lookup["PACKAGE_URL"],
        license=lookup["LICENSE"],
        description=lookup["DESCRIPTION"],
        long_description=LONG_DESCRIPTION,
        long_description_content_type="text/markdown",
        keywords=lookup["KEYWORDS"],
        python_requires=">=3.8",
        install_requires=get_reqs(lookup),
        tests_require=get_reqs(lookup, "TESTS_REQUIRES"),
        extras_require={
            "tests": get_reqs(lookup, "TESTS_REQUIRES"),
            "all": get_reqs(lookup, "ALL_REQUIRES"),
        },
        classifiers=[
            "Intended Audience :: Science/Research",
            "License :: OSI Approved :: Mozilla Public License 2.0 (MPL 2.0)",
            "Topic :: Scientific/Engineering :: Information Analysis",
            "Topic :: Scientific/Engineering :: Mathematics",
            "Natural Language :: English",
            "Operating System :: Unix",
            "Programming Language :: Python :: 3",
            "Programming Language :: Python :: 3.8",
            "Programming Language :: Python :: 3.9",
            "Programming Language :: Python :: 3.10",
            "Programming Language :: Python :: 3.11",
        ],
        entry_points={"console_scripts": ["hawkesweb=hawkesweb.client:main"]},
    )
