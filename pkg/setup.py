from setuptools import setup, find_packages


version = '0.1.0-dev'


setup(name='semgame',
      version=version,
      description="Semantically labelled parity games from LTL, solved by strategy improvement and Q-learning",
      long_description="""\
Translates LTL specifications into semantically labelled parity games and
solves them with strategy improvement (random or trueness-optimal
initialization) and Q-learning with win, priority and semantic rewards.""",
      classifiers=[],  # Get strings from http://pypi.python.org/pypi?%3Aaction=list_classifiers
      keywords='ltl synthesis parity games strategy improvement q-learning',
      author='Diogo Baeder',
      author_email='contato@diogobaeder.com.br',
      url='https://github.com/diogobaeder/semgame',
      license='BSD 2-Clause',
      packages=find_packages(exclude=['ez_setup', 'examples', 'tests']),
      include_package_data=True,
      zip_safe=False,
      install_requires=[
          'tornado',
          'lark',
          'dd',
          'networkx',
          'numpy',
          'tabulate',
      ],
      entry_points={
          'console_scripts': [
              'semgame = semgame.cli:main',
          ],
      },
      )
