from setuptools import setup, find_packages


builtin_plugins = [
    'AnalyzeCommand = repeaterlab.plugins.commands:AnalyzeCommand',
    'SweepCommand = repeaterlab.plugins.commands:SweepCommand',
    'SimulateCommand = repeaterlab.plugins.commands:SimulateCommand',
    'CompareCommand = repeaterlab.plugins.commands:CompareCommand',
    'ThreadLimiter = repeaterlab.plugins.threads:ThreadLimiter',
    'CsvReporter = repeaterlab.plugins.reporting.csv:CsvReporter',
    'JsonReporter = repeaterlab.plugins.reporting.summary:JsonReporter',
    'ParamsWriter = repeaterlab.plugins.reporting.summary:ParamsWriter',
    'Colouriser = repeaterlab.plugins.reporting.cli:Colouriser',
    'DotsReporter = repeaterlab.plugins.reporting.cli:DotsReporter',
    'VerboseReporter = repeaterlab.plugins.reporting.cli:VerboseReporter',
    'TimedReporter = repeaterlab.plugins.reporting.cli:TimedReporter',
    'ErrorReporter = repeaterlab.plugins.reporting:ErrorReporter',
    'UnColouriser = repeaterlab.plugins.reporting.cli:UnColouriser',
    'ExitCodeReporter = repeaterlab.plugins.reporting:ExitCodeReporter',
]


setup(
    name="RepeaterLab",
    version="0.1",
    description="""Markov-chain throughput and latency analysis for quantum repeater protocols, with a Monte Carlo cross-check.""",
    long_description="""See README.md for the command line and the figure sweeps.""",
    package_dir={'': 'src'},
    packages=find_packages('src'),
    python_requires=">=3.8",
    install_requires=["numpy >= 1.17", "scipy >= 1.4", "networkx >= 2.4"],
    extras_require={
        'colour': ["colorama >= 0.2.7"],
        'tests': ["Contexts >= 0.11", "hypothesis >= 5.0"],
    },
    entry_points={
        'console_scripts': ['repeaterlab=repeaterlab.__main__:cmd'],
        'repeaterlab.plugins': builtin_plugins,
    },
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Intended Audience :: Science/Research",
        "Natural Language :: English",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Physics",
    ]
)
