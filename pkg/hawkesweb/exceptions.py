"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""


class MissingEnvironmentVariable(RuntimeError):
    """Thrown if a required environment variable is not provided."""

    def __init__(self, varname, *args, **kwargs):
        super(MissingEnvironmentVariable, self).__init__(*args, **kwargs)
        self.varname = varname

    def __str__(self):
        return "Missing environment variable '{}' is required".format(self.varname)


class HawkeswebError(RuntimeError):
    """Abstract base class for any error raised by hawkesweb."""

    # Validation errors exit with 2, everything else with 1
    return_code = 1

    def __init__(self, reason=None, *args, **kwargs):
        super(HawkeswebError, self).__init__(*args, **kwargs)
        self.reason = reason or "There was a problem with hawkesweb"

    def __str__(self):
        return self.reason


## Validation


class ConfigError(HawkeswebError):
    """Thrown if a configuration file or value does not validate."""

    return_code = 2

    def __init__(self, reason, section=None, key=None, *args, **kwargs):
        self.section = section
        self.key = key
        if section and key:
            reason = "[%s] %s: %s" % (section, key, reason)
        elif section:
            reason = "[%s]: %s" % (section, reason)
        super(ConfigError, self).__init__(reason, *args, **kwargs)


class UrlParseError(HawkeswebError):
    """Thrown if a raw URL cannot be parsed."""

    return_code = 2

    def __init__(self, url, detail=None, *args, **kwargs):
        self.url = url
        reason = "Cannot parse URL %r" % url
        if detail:
            reason = "%s: %s" % (reason, detail)
        super(UrlParseError, self).__init__(reason, *args, **kwargs)


class UnknownGroupError(HawkeswebError):
    """Thrown if an event names a group outside the configured labels."""

    return_code = 2

    def __init__(self, label, permitted, *args, **kwargs):
        self.label = label
        self.permitted = list(permitted)
        reason = "Unknown group %r, permitted labels are: %s" % (
            label,
            ", ".join(self.permitted),
        )
        super(UnknownGroupError, self).__init__(reason, *args, **kwargs)


class ArtifactError(HawkeswebError):
    """Thrown if an intermediate artifact is missing or malformed."""

    return_code = 2

    def __init__(self, path, detail=None, *args, **kwargs):
        self.path = path
        reason = "Problem with artifact %s" % path
        if detail:
            reason = "%s: %s" % (reason, detail)
        super(ArtifactError, self).__init__(reason, *args, **kwargs)


## Model


class WindowRangeError(HawkeswebError):
    """Thrown if a time lies outside the observation window."""

    def __init__(self, t, window_T, *args, **kwargs):
        self.t = t
        self.window_T = window_T
        reason = "Time %s is outside the observation window [0, %s]" % (t, window_T)
        super(WindowRangeError, self).__init__(reason, *args, **kwargs)


class SupercriticalError(HawkeswebError):
    """Thrown if a weight matrix has spectral radius of at least 1."""

    def __init__(self, radius, *args, **kwargs):
        self.radius = radius
        reason = "Weight matrix is not subcritical (spectral radius %.6f >= 1)" % radius
        super(SupercriticalError, self).__init__(reason, *args, **kwargs)


class InvariantViolation(HawkeswebError):
    """Thrown if an internal invariant of the fitting procedure breaks."""

    def __init__(self, detail, *args, **kwargs):
        super(InvariantViolation, self).__init__(
            "Invariant violated: %s" % detail, *args, **kwargs
        )


class EmptySampleError(HawkeswebError):
    """Thrown if a statistic is requested over an empty sample."""

    def __init__(self, what="sample", *args, **kwargs):
        super(EmptySampleError, self).__init__(
            "Cannot compute over an empty %s" % what, *args, **kwargs
        )
