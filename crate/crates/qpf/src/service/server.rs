use std::collections::{BTreeMap, HashMap};
use std::io::{self, BufRead, Write};
use std::net::TcpListener;
use std::sync::mpsc::{self, Sender};
use std::sync::{Arc, Condvar, Mutex};
use std::thread;

use log::{info, warn};

use super::dispatch::EmulatorBackend;
use super::framework::Framework;
use super::wire::{Request, Response};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ServerConfig {
    pub capacity: usize,
    pub seed: u64,
}

type Route = (Sender<(u64, Response)>, u64);

struct State {
    framework: Framework<EmulatorBackend>,
    routes: HashMap<u64, Route>,
}

/// Framework state shared by all connections and the dispatcher thread.
pub struct Shared {
    state: Mutex<State>,
    work: Condvar,
}

impl Shared {
    pub fn new(config: ServerConfig) -> Arc<Self> {
        let framework = Framework::new(EmulatorBackend::new(config.capacity, config.seed));
        let shared = Arc::new(Self {
            state: Mutex::new(State { framework, routes: HashMap::new() }),
            work: Condvar::new(),
        });
        let worker = Arc::clone(&shared);
        thread::spawn(move || worker.dispatch_loop());
        shared
    }

    fn dispatch_loop(&self) {
        loop {
            let mut state = self.state.lock().expect("state lock");
            while state.framework.pending() == 0 {
                state = self.work.wait(state).expect("state lock");
            }
            let Some(report) = state.framework.step() else { continue };
            for seg in report.segments {
                if let Some((tx, seq)) = state.routes.remove(&seg.ticket()) {
                    let _ = tx.send((seq, seg.response));
                }
            }
        }
    }

    /// Handles one request line. Submissions are answered later through `tx`.
    fn handle_line(&self, line: &str, seq: u64, tx: &Sender<(u64, Response)>) {
        let request: Request = match serde_json::from_str(line) {
            Ok(r) => r,
            Err(e) => {
                let _ = tx.send((seq, Response::error(None, None, format!("malformed message: {e}"))));
                return;
            }
        };
        let mut state = self.state.lock().expect("state lock");
        match request {
            Request::Capacity => {
                let _ = tx.send((seq, Response::Capacity { capacity: state.framework.capacity() }));
            }
            Request::Submit(req) => match state.framework.submit(&req) {
                Ok((ticket, _)) => {
                    state.routes.insert(ticket, (tx.clone(), seq));
                    self.work.notify_one();
                }
                Err(resp) => {
                    let _ = tx.send((seq, resp));
                }
            },
        }
    }
}

/// Serves one connection. Responses are written in request order; returns
/// once the input ends and every response has been written.
pub fn handle_connection(shared: &Shared, input: impl BufRead, mut output: impl Write + Send) -> io::Result<()> {
    let (tx, rx) = mpsc::channel::<(u64, Response)>();
    thread::scope(|scope| {
        let writer = scope.spawn(move || -> io::Result<()> {
            let mut next = 0;
            let mut held = BTreeMap::new();
            for (seq, resp) in rx {
                held.insert(seq, resp);
                while let Some(resp) = held.remove(&next) {
                    writeln!(output, "{}", resp.to_line())?;
                    output.flush()?;
                    next += 1;
                }
            }
            Ok(())
        });
        let mut seq = 0;
        for line in input.lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            shared.handle_line(&line, seq, &tx);
            seq += 1;
        }
        drop(tx);
        writer.join().expect("writer thread")
    })
}

pub fn serve_stdio(config: ServerConfig) -> io::Result<()> {
    let shared = Shared::new(config);
    info!("serving on stdio, capacity {}", config.capacity);
    handle_connection(&shared, io::stdin().lock(), io::stdout())
}

pub fn serve_tcp(addr: &str, config: ServerConfig) -> io::Result<()> {
    let listener = TcpListener::bind(addr)?;
    info!("serving on {}, capacity {}", listener.local_addr()?, config.capacity);
    let shared = Shared::new(config);
    for stream in listener.incoming() {
        let stream = stream?;
        let shared = Arc::clone(&shared);
        thread::spawn(move || {
            let peer = stream.peer_addr().ok();
            let reader = match stream.try_clone() {
                Ok(s) => io::BufReader::new(s),
                Err(e) => return warn!("connection setup failed: {e}"),
            };
            if let Err(e) = handle_connection(&shared, reader, stream) {
                warn!("connection {peer:?} closed: {e}");
            }
        });
    }
    Ok(())
}
