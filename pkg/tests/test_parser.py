from unittest import TestCase

from nose.tools import istest

from semgame import ltl
from semgame.errors import FormulaSyntaxError
from semgame.parser import LTLParser, parse
from .utils import random_ltl, seeded


class LTLParserTest(TestCase):
    @istest
    def parses_globally(self):
        phi = parse('G a')

        self.assertEqual(phi.kind, ltl.GLOBALLY)
        self.assertIs(phi.children[0], ltl.atom('a'))

    @istest
    def parses_nested_unary_operators(self):
        phi = parse('F G a')

        self.assertIs(phi, ltl.eventually(ltl.always(ltl.atom('a'))))

    @istest
    def binds_until_tighter_than_disjunction(self):
        phi = parse('a U b | c')

        self.assertIs(phi, ltl.disjunction(ltl.until(ltl.atom('a'), ltl.atom('b')), ltl.atom('c')))

    @istest
    def binds_conjunction_tighter_than_disjunction(self):
        a, b, c = ltl.atom('a'), ltl.atom('b'), ltl.atom('c')

        self.assertIs(parse('a | b & c'), ltl.disjunction(a, ltl.conjunction(b, c)))

    @istest
    def binds_unary_operators_tighter_than_until(self):
        a, b = ltl.atom('a'), ltl.atom('b')

        self.assertIs(parse('X a U b'), ltl.until(ltl.next_(a), b))

    @istest
    def associates_until_to_the_right(self):
        a, b, c = ltl.atom('a'), ltl.atom('b'), ltl.atom('c')

        self.assertIs(parse('a U b U c'), ltl.until(a, ltl.until(b, c)))

    @istest
    def parses_constants_and_long_atom_names(self):
        self.assertIs(parse('tt'), ltl.TRUE)
        self.assertIs(parse('ff'), ltl.FALSE)
        self.assertEqual(parse('req_0').name, 'req_0')

    @istest
    def parses_release(self):
        self.assertEqual(parse('a R b').kind, ltl.RELEASE)

    @istest
    def reports_position_of_syntax_errors(self):
        with self.assertRaises(FormulaSyntaxError) as context:
            parse('a & & b')

        self.assertEqual(context.exception.position, 4)
        self.assertEqual(context.exception.text, 'a & & b')

    @istest
    def reports_unexpected_end_of_input(self):
        with self.assertRaises(FormulaSyntaxError):
            parse('G (a')

    @istest
    def rejects_uppercase_atoms(self):
        with self.assertRaises(FormulaSyntaxError):
            parse('Request')

    @istest
    def reads_back_printed_formulae(self):
        parser = LTLParser()
        rng = seeded(3)
        for _ in range(200):
            phi = random_ltl(rng, int(rng.integers(1, 16)), atoms=4)

            self.assertIs(parser.parse(phi.text), phi)
