"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

import logging
import os

from hawkesweb.defaults import HAWKESWEB_STATE_DOMAINS
from hawkesweb.exceptions import ArtifactError, UrlParseError
from hawkesweb.utils.file import read_file, read_rows
from hawkesweb.utils.urls import bare_host, host_in, join_url, split_url

from .models import Category, UrlRecord

bot = logging.getLogger("hawkesweb.main.events.urls")


def normalize(raw):
    """the canonical string of a raw URL, without redirect resolution"""
    return join_url(*split_url(raw))


def canonicalize_url(raw, redirect_map=None, state_domains=None, news_domains=None):
    """
    Canonicalize a raw URL: drop the scheme, userinfo, default port and
    fragment, lowercase the host, and strip trailing slashes. If the URL (or
    failing that, its host) is a key of the redirect map, the mapped target
    is canonicalized instead. One lookup is made, chains are not followed.
    """
    canonical = normalize(raw)
    redirect_map = redirect_map or {}
    if redirect_map:
        host = canonical.split("/", 1)[0].split("?", 1)[0]
        target = redirect_map.get(canonical) or redirect_map.get(host)
        if target:
            try:
                canonical = normalize(target)
            except UrlParseError as e:
                raise UrlParseError(raw, "redirect target %r: %s" % (target, e.reason))

    record = UrlRecord(raw=raw, canonical=canonical)
    category = categorize_url(
        record,
        state_domains if state_domains is not None else set(HAWKESWEB_STATE_DOMAINS),
        news_domains or set(),
    )
    return UrlRecord(raw=raw, canonical=canonical, category=category)


def categorize_url(record, state_domains, news_domains):
    """
    RussianState if the host is (a subdomain of) a state domain, else
    OtherNews if it is a listed news domain, else Other. State domains win
    when the lists overlap.
    """
    if host_in(record.host, state_domains):
        return Category.RussianState
    if host_in(record.host, news_domains):
        return Category.OtherNews
    return Category.Other


def load_redirect_map(path):
    """
    Read a two-column delimited file of source -> target URLs (or hosts).
    Keys are normalized so lookups work on canonical forms.
    """
    mapping = {}
    if not path:
        return mapping
    if not os.path.exists(path):
        raise ArtifactError(path, "redirect map does not exist")
    for row in read_rows(path):
        if len(row) < 2 or not row[1]:
            bot.warning("Skipping redirect row without a target: %s" % row)
            continue
        try:
            mapping[normalize(row[0])] = row[1]
        except UrlParseError as e:
            bot.warning("Skipping redirect row: %s" % e)
    bot.info("Loaded %s redirects from %s" % (len(mapping), path))
    return mapping


def load_domains(path, default=None):
    """Read a one-host-per-line file into a set of bare hosts."""
    if not path:
        return set(default or ())
    if not os.path.exists(path):
        raise ArtifactError(path, "domain list does not exist")
    domains = set()
    for line in read_file(path):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        domains.add(bare_host(split_url(line)[0]))
    return domains


class UrlResolver:
    """
    Canonicalizes and categorizes raw URLs against one redirect map and one
    pair of domain lists, remembering what it has already seen.
    """

    def __init__(self, redirect_map=None, state_domains=None, news_domains=None):
        self.redirect_map = redirect_map or {}
        self.state_domains = (
            set(HAWKESWEB_STATE_DOMAINS) if state_domains is None else set(state_domains)
        )
        self.news_domains = set(news_domains or ())
        overlap = self.state_domains & self.news_domains
        if overlap:
            bot.warning(
                "Domains listed as both state and news are treated as state: %s"
                % ", ".join(sorted(overlap))
            )
        self.seen = {}

    @classmethod
    def from_files(cls, redirects=None, state_domains=None, news_domains=None):
        return cls(
            redirect_map=load_redirect_map(redirects),
            state_domains=load_domains(state_domains, HAWKESWEB_STATE_DOMAINS),
            news_domains=load_domains(news_domains),
        )

    def resolve(self, raw):
        if raw not in self.seen:
            self.seen[raw] = canonicalize_url(
                raw, self.redirect_map, self.state_domains, self.news_domains
            )
        return self.seen[raw]

    def __repr__(self):
        return "[resolver][redirects:%s][state:%s][news:%s]" % (
            len(self.redirect_map),
            len(self.state_domains),
            len(self.news_domains),
        )
