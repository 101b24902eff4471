"""This module contains all error definitions.

Every error carries a stable ``code`` so the command-line front end can
report it as a machine-readable envelope.

.. autosummary:

    SzilardSimError
    NotNormalized
    BadOutcomeLength
    NegativeProbability
    ProbabilityOutOfRange
    DuplicateOutcome
    SupportOverflow
    WeightSumError
    MixedArity
    EmptySubset
    IndexOutOfRange
    NotBijective
    ArityMismatch
    BadEpsilon
    BiasedBitsPresent
    SamePosition
    NonpositiveTemperature
    InvalidBets
    BadBetSize
    SymbolicPlanError
    TooLarge
    ParseError
    ConfigurationError
    InvariantViolation
"""


class SzilardSimError(Exception):
    """SzilardSimError is the base of every error raised by the package.

    :param str message: error message
    :ivar str code: stable machine-readable error code
    """
    code = 'error'

    def __init__(self, message):
        super(SzilardSimError, self).__init__(message)
        self.message = message

    def __str__(self):
        return type(self).__name__ + ': ' + self.message

    def to_dict(self):
        """Return the error as a JSON-ready dictionary"""
        return {'code': self.code, 'kind': type(self).__name__,
                'message': self.message}


class NotNormalized(SzilardSimError):
    """NotNormalized is thrown when probabilities do not sum to 1.

    :param float total: the offending total mass
    """
    code = 'not_normalized'

    def __init__(self, total):
        super(NotNormalized, self).__init__(
            'probabilities sum to %r, not 1' % total)
        self.total = total


class BadOutcomeLength(SzilardSimError):
    """BadOutcomeLength is thrown when an outcome has the wrong number of bits."""
    code = 'bad_outcome_length'


class NegativeProbability(SzilardSimError):
    """NegativeProbability is thrown when an entry is below zero."""
    code = 'negative_probability'


class ProbabilityOutOfRange(SzilardSimError):
    """ProbabilityOutOfRange is thrown when a bias or probability is outside
    [0, 1]."""
    code = 'probability_out_of_range'


class DuplicateOutcome(SzilardSimError):
    """DuplicateOutcome is thrown when an outcome is listed twice."""
    code = 'duplicate_outcome'


class SupportOverflow(SzilardSimError):
    """SupportOverflow is thrown when an explicit table would exceed its cap.

    :param int size: number of outcomes requested
    :param int cap: configured cap
    """
    code = 'support_overflow'

    def __init__(self, size, cap):
        super(SupportOverflow, self).__init__(
            'explicit table of %d outcomes exceeds cap %d' % (size, cap))
        self.size = size
        self.cap = cap


class WeightSumError(SzilardSimError):
    """WeightSumError is thrown when mixture weights are not positive or do
    not sum to 1."""
    code = 'weight_sum'


class MixedArity(SzilardSimError):
    """MixedArity is thrown when mixture components disagree on n."""
    code = 'mixed_arity'


class EmptySubset(SzilardSimError):
    """EmptySubset is thrown when a marginal over no bits is requested."""
    code = 'empty_subset'


class IndexOutOfRange(SzilardSimError):
    """IndexOutOfRange is thrown when a bit position is not below n."""
    code = 'index_out_of_range'


class NotBijective(SzilardSimError):
    """NotBijective is thrown when a permutation is not a bijection."""
    code = 'not_bijective'


class ArityMismatch(SzilardSimError):
    """ArityMismatch is thrown when two objects live on different outcome
    spaces."""
    code = 'arity_mismatch'


class BadEpsilon(SzilardSimError):
    """BadEpsilon is thrown when a smoothing parameter is outside its range.

    :param float epsilon: the offending value
    :param str allowed: description of the allowed range
    """
    code = 'bad_epsilon'

    def __init__(self, epsilon, allowed='0 <= epsilon < 1'):
        super(BadEpsilon, self).__init__(
            'epsilon=%r violates %s' % (epsilon, allowed))
        self.epsilon = epsilon


class BiasedBitsPresent(SzilardSimError):
    """BiasedBitsPresent is thrown when Bennett's formula is asked for a
    profile containing biased bits; the theorem bounds apply instead.

    :param list positions: positions of the biased bits
    """
    code = 'biased_bits_present'

    def __init__(self, positions):
        super(BiasedBitsPresent, self).__init__(
            'bits %s are biased; use the smooth-entropy bounds' % list(positions))
        self.positions = list(positions)


class SamePosition(SzilardSimError):
    """SamePosition is thrown when control and target of a CNOT coincide."""
    code = 'same_position'


class NonpositiveTemperature(SzilardSimError):
    """NonpositiveTemperature is thrown for temperatures at or below 0 K."""
    code = 'nonpositive_temperature'


class InvalidBets(SzilardSimError):
    """InvalidBets is thrown when bet positions repeat, leave [0, n), or a
    guessed value is not 0 or 1."""
    code = 'invalid_bets'


class BadBetSize(SzilardSimError):
    """BadBetSize is thrown when a gambler is asked to bet on m boxes with
    m outside [1, n]."""
    code = 'bad_bet_size'


class SymbolicPlanError(SzilardSimError):
    """SymbolicPlanError is thrown when a permutation must be applied but the
    plan was only described symbolically."""
    code = 'symbolic_plan'


class TooLarge(SzilardSimError):
    """TooLarge is thrown when a brute-force oracle is given an instance
    beyond its limit."""
    code = 'too_large'


class ParseError(SzilardSimError):
    """ParseError is thrown when a distribution spec does not follow the
    grammar.

    :param int line: 1-based line of the error
    :param int col: 1-based column of the error
    :param str expected: what the parser expected there
    """
    code = 'parse_error'

    def __init__(self, line, col, expected):
        super(ParseError, self).__init__(
            '(Line %d, Col %d) expected %s' % (line, col, expected))
        self.line = line
        self.col = col
        self.expected = expected

    def to_dict(self):
        result = super(ParseError, self).to_dict()
        result.update(line=self.line, col=self.col, expected=self.expected)
        return result


class ConfigurationError(SzilardSimError):
    """ConfigurationError is thrown when a game or run setting is invalid."""
    code = 'configuration'


class InvariantViolation(SzilardSimError):
    """InvariantViolation is thrown when an internal consistency check fails."""
    code = 'invariant_violation'
