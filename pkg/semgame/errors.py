class SemgameError(Exception):
    pass


class FormulaSyntaxError(SemgameError):
    def __init__(self, message, text, position):
        super(FormulaSyntaxError, self).__init__('{} at position {}'.format(message, position))
        self.text = text
        self.position = position


class CapacityError(SemgameError):
    def __init__(self, variables, cap):
        super(CapacityError, self).__init__(
            'abstraction needs {} variables, cap is {}'.format(variables, cap))
        self.variables = variables
        self.cap = cap


class UnsupportedFormula(SemgameError):
    pass


class BudgetExceeded(SemgameError):
    def __init__(self, budget):
        super(BudgetExceeded, self).__init__('game exceeds {} vertices'.format(budget))
        self.budget = budget


class SchemaError(SemgameError):
    def __init__(self, pointer, message):
        super(SchemaError, self).__init__('{}: {}'.format(pointer or '/', message))
        self.pointer = pointer


class LabellingError(SemgameError):
    def __init__(self, vertex):
        super(LabellingError, self).__init__('vertex {} has no labelling'.format(vertex))
        self.vertex = vertex


class SolverError(SemgameError):
    pass


class DeadlineExceeded(SemgameError):
    def __init__(self, steps):
        super(DeadlineExceeded, self).__init__('deadline passed after {} evaluation steps'.format(steps))
        self.steps = steps
