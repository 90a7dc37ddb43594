from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput

from semgame import ltl
from semgame.errors import FormulaSyntaxError


GRAMMAR = r'''
?start: disjunction

?disjunction: conjunction ("|" conjunction)*
?conjunction: binary ("&" binary)*

?binary: unary
       | unary "U" binary -> until
       | unary "R" binary -> release

?unary: primary
      | "!" unary -> negation
      | "X" unary -> next
      | "F" unary -> eventually
      | "G" unary -> always

?primary: "tt" -> true
        | "ff" -> false
        | NAME -> atom
        | "(" disjunction ")"

NAME: /[a-z][a-zA-Z0-9_]*/

%import common.WS
%ignore WS
'''


class FormulaBuilder(Transformer):
    def disjunction(self, children):
        return ltl.disjunction(*children)

    def conjunction(self, children):
        return ltl.conjunction(*children)

    def until(self, children):
        return ltl.until(*children)

    def release(self, children):
        return ltl.release(*children)

    def negation(self, children):
        return ltl.negation(children[0])

    def next(self, children):
        return ltl.next_(children[0])

    def eventually(self, children):
        return ltl.eventually(children[0])

    def always(self, children):
        return ltl.always(children[0])

    def true(self, children):
        return ltl.TRUE

    def false(self, children):
        return ltl.FALSE

    def atom(self, children):
        return ltl.atom(str(children[0]))


class LTLParser(object):
    """Parses the documented LTL grammar.

    Precedence, tightest first: unary operators (! X F G), U and R (right
    associative), &, |.
    """

    def __init__(self):
        self.parser = Lark(GRAMMAR, parser='lalr')
        self.builder = FormulaBuilder()

    def parse(self, text):
        try:
            tree = self.parser.parse(text)
        except UnexpectedInput as error:
            position = getattr(error, 'pos_in_stream', None)
            if position is None or position < 0:
                position = len(text)
            raise FormulaSyntaxError('unexpected input', text, position)
        return self.builder.transform(tree)


_parser = None


def parse(text):
    global _parser
    if _parser is None:
        _parser = LTLParser()
    return _parser.parse(text)

